#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

namespace ppacert {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// A concrete maximal monotone operator from the linear zoo: either w ->
/// S w with S + S^T PSD (checked numerically on construction), or the skew
/// rotation field w -> tan(theta) * [[0,1],[-1,0]] w on R^2, whose resolvent
/// at lambda = 1 is the contracted rotation beta * Theta, beta = cos(theta).
class OperatorSpec {
public:
  struct LinearMonotone {
    Matrix s;
  };
  struct RotationOperator {
    double theta;
  };

  static OperatorSpec linear_monotone(Matrix s) {
    if (s.rows() != s.cols()) throw std::invalid_argument("linear_monotone: matrix not square");
    const Matrix sym = 0.5 * (s + s.transpose());
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
    if (eig.eigenvalues().minCoeff() < -1e-12)
      throw std::invalid_argument("linear_monotone: symmetric part is not PSD");
    return OperatorSpec(LinearMonotone{std::move(s)});
  }

  static OperatorSpec rotation(double theta) {
    if (!(theta > 0.0 && theta < M_PI / 2))
      throw std::invalid_argument("rotation: theta must lie in (0, pi/2)");
    return OperatorSpec(RotationOperator{theta});
  }

  int dim() const {
    if (const auto* lin = std::get_if<LinearMonotone>(&v_))
      return static_cast<int>(lin->s.rows());
    return 2;
  }

  Vector apply(const Vector& w) const {
    if (w.size() != dim()) throw std::invalid_argument("OperatorSpec: dimension mismatch");
    if (const auto* lin = std::get_if<LinearMonotone>(&v_)) return lin->s * w;
    const double t = std::tan(std::get<RotationOperator>(v_).theta);
    Vector out(2);
    out[0] = t * w[1];
    out[1] = -t * w[0];
    return out;
  }

  const std::variant<LinearMonotone, RotationOperator>& spec() const { return v_; }

private:
  explicit OperatorSpec(std::variant<LinearMonotone, RotationOperator> v) : v_(std::move(v)) {}
  std::variant<LinearMonotone, RotationOperator> v_;
};

/// PPA iterates w^0..w^n with lambda and the residual norms |w^k - w^{k+1}|.
struct Trajectory {
  double lambda = 1.0;
  std::vector<Vector> points;
  std::vector<double> residual_norms;
};

/// The resolvent value (I + lambda A)^{-1} w. For the linear zoo this is the
/// solution of (I + lambda S) w' = w; monotonicity makes the system
/// nonsingular, so a failed solve signals a violated precondition.
inline Vector resolvent(const OperatorSpec& op, double lambda, const Vector& w) {
  if (!(lambda > 0)) throw std::invalid_argument("resolvent: lambda must be positive");
  if (w.size() != op.dim()) throw std::invalid_argument("resolvent: dimension mismatch");

  if (const auto* rot = std::get_if<OperatorSpec::RotationOperator>(&op.spec())) {
    // (I + a R)^{-1} = 1/(1+a^2) [[1, -a],[a, 1]] with R = [[0,1],[-1,0]]
    const double a = lambda * std::tan(rot->theta);
    const double inv = 1.0 / (1.0 + a * a);
    Vector out(2);
    out[0] = inv * (w[0] - a * w[1]);
    out[1] = inv * (a * w[0] + w[1]);
    return out;
  }

  const auto& lin = std::get<OperatorSpec::LinearMonotone>(op.spec());
  const Matrix system = Matrix::Identity(lin.s.rows(), lin.s.cols()) + lambda * lin.s;
  const Vector out = system.partialPivLu().solve(w);
  if (!out.allFinite() || (system * out - w).norm() > 1e-8 * (1.0 + w.norm()))
    throw std::runtime_error("resolvent: singular system (operator not monotone?)");
  return out;
}

/// Runs n >= 1 resolvent steps from w0 and records residual norms.
inline Trajectory ppa_run(const OperatorSpec& op, const Vector& w0, double lambda, int n) {
  if (n < 1) throw std::invalid_argument("ppa_run: need at least one iteration");
  Trajectory t;
  t.lambda = lambda;
  t.points.push_back(w0);
  for (int k = 0; k < n; ++k) {
    t.points.push_back(resolvent(op, lambda, t.points.back()));
    t.residual_norms.push_back((t.points[t.points.size() - 2] - t.points.back()).norm());
  }
  return t;
}

/// |w^N - w^{N+1}|^2 / |w^0 - w*|^2 over the trajectory's last two points.
inline double performance_ratio(const Trajectory& t, const Vector& w_star) {
  if (t.points.size() < 2)
    throw std::invalid_argument("performance_ratio: need at least two points");
  const double dist2 = (t.points.front() - w_star).squaredNorm();
  if (dist2 <= 0.0) throw std::invalid_argument("performance_ratio: zero initial distance");
  const auto n = t.points.size();
  return (t.points[n - 2] - t.points[n - 1]).squaredNorm() / dist2;
}

/// The normalized trajectory w -> (w - w*) / |w^0 - w*|: the solution point
/// moves to the origin, lambda rescales to 1 and the initial distance to 1.
/// The performance ratio is invariant under this map.
inline Trajectory normalize(const Trajectory& t, const Vector& w_star) {
  if (t.points.empty()) throw std::invalid_argument("normalize: empty trajectory");
  const double dist = (t.points.front() - w_star).norm();
  if (dist <= 0.0) throw std::invalid_argument("normalize: zero initial distance");
  Trajectory out;
  out.lambda = 1.0;
  for (const auto& p : t.points) out.points.push_back((p - w_star) / dist);
  for (size_t k = 0; k + 1 < out.points.size(); ++k)
    out.residual_norms.push_back((out.points[k] - out.points[k + 1]).norm());
  return out;
}

}  // namespace ppacert
