#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "ppacert/ppa.hpp"

using namespace ppacert;

namespace {

Vector vec2(double x, double y) {
  Vector v(2);
  v << x, y;
  return v;
}

Vector rotation_point(int n_iters, int k, double scale = 1.0) {
  const double beta = std::sqrt(n_iters / (n_iters + 1.0));
  const double theta = std::acos(beta);
  return vec2(scale * std::pow(beta, k) * std::cos(k * theta),
              scale * std::pow(beta, k) * std::sin(k * theta));
}

}  // namespace

TEST_CASE("rotation resolvent at lambda=1 is the contracted rotation") {
  std::mt19937 rng(51);
  std::uniform_real_distribution<double> angle(0.05, M_PI / 2 - 0.05), coord(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double theta = angle(rng);
    const auto op = OperatorSpec::rotation(theta);
    const Vector w = vec2(coord(rng), coord(rng));
    const Vector got = resolvent(op, 1.0, w);
    const double c = std::cos(theta), s = std::sin(theta);
    const Vector want = std::cos(theta) * vec2(c * w[0] - s * w[1], s * w[0] + c * w[1]);
    REQUIRE((got - want).norm() < 1e-14);
  }
}

TEST_CASE("zero operator has the identity resolvent") {
  const auto op = OperatorSpec::linear_monotone(Matrix::Zero(3, 3));
  Vector w(3);
  w << 1.5, -0.5, 2.0;
  const Vector got = resolvent(op, 2.5, w);
  REQUIRE((got - w).norm() == 0.0);
}

TEST_CASE("identity operator halves at lambda=1") {
  const auto op = OperatorSpec::linear_monotone(Matrix::Identity(2, 2));
  const Vector w = vec2(3.0, -1.0);
  REQUIRE((resolvent(op, 1.0, w) - 0.5 * w).norm() < 1e-15);
}

TEST_CASE("skew operators satisfy <A w, w> = 0") {
  std::mt19937 rng(53);
  std::uniform_real_distribution<double> angle(0.05, M_PI / 2 - 0.05), coord(-3.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto op = OperatorSpec::rotation(angle(rng));
    const Vector w = vec2(coord(rng), coord(rng));
    REQUIRE(std::abs(op.apply(w).dot(w)) < 1e-12 * (1.0 + w.squaredNorm()));
  }
}

TEST_CASE("ppa_run on the optimal rotation follows beta^k Theta^k w0") {
  for (int n : {1, 2, 5, 20, 50}) {
    const double beta = std::sqrt(n / (n + 1.0));
    const auto op = OperatorSpec::rotation(std::acos(beta));
    const Trajectory t = ppa_run(op, vec2(1.0, 0.0), 1.0, n + 1);
    REQUIRE(t.points.size() == static_cast<size_t>(n) + 2);
    for (int k = 0; k <= n + 1; ++k)
      REQUIRE((t.points[static_cast<size_t>(k)] - rotation_point(n, k)).lpNorm<Eigen::Infinity>() <
              1e-10);
  }
}

TEST_CASE("ppa_run on the zero operator is stationary") {
  const auto op = OperatorSpec::linear_monotone(Matrix::Zero(2, 2));
  const Trajectory t = ppa_run(op, vec2(0.3, 0.4), 1.0, 4);
  for (const auto& p : t.points) REQUIRE((p - vec2(0.3, 0.4)).norm() == 0.0);
  for (double r : t.residual_norms) REQUIRE(r == 0.0);
}

TEST_CASE("ppa_run halves repeatedly on the identity operator") {
  const auto op = OperatorSpec::linear_monotone(Matrix::Identity(1, 1));
  Vector w0(1);
  w0 << 1.0;
  const Trajectory t = ppa_run(op, w0, 1.0, 3);
  const double want[] = {1.0, 0.5, 0.25, 0.125};
  REQUIRE(t.points.size() == 4);
  for (size_t k = 0; k < 4; ++k) REQUIRE(t.points[k][0] == Catch::Approx(want[k]).epsilon(1e-15));
}

TEST_CASE("performance_ratio of the rotation run is beta^{2N}(1 - beta^2)") {
  for (int n : {1, 3, 8, 25}) {
    const double beta_sq = n / (n + 1.0);
    const auto op = OperatorSpec::rotation(std::acos(std::sqrt(beta_sq)));
    const Trajectory t = ppa_run(op, vec2(1.0, 0.0), 1.0, n + 1);
    const double want = std::pow(beta_sq, n) * (1.0 - beta_sq);
    REQUIRE(performance_ratio(t, Vector::Zero(2)) == Catch::Approx(want).margin(1e-12));
  }
}

TEST_CASE("a stationary trajectory has ratio zero") {
  const auto op = OperatorSpec::rotation(0.7);
  const Trajectory t = ppa_run(op, Vector::Zero(2), 1.0, 3);  // w0 is the fixed point
  REQUIRE(performance_ratio(t, vec2(1.0, 0.0)) == 0.0);
}

TEST_CASE("halving trajectory ratio at N=2 is 1/64") {
  const auto op = OperatorSpec::linear_monotone(Matrix::Identity(1, 1));
  Vector w0(1), w_star(1);
  w0 << 1.0;
  w_star << 0.0;
  const Trajectory t = ppa_run(op, w0, 1.0, 3);
  REQUIRE(performance_ratio(t, w_star) == Catch::Approx(1.0 / 64).epsilon(1e-14));
}

TEST_CASE("normalize is the identity on an already-normalized trajectory") {
  const int n = 4;
  const auto op = OperatorSpec::rotation(std::acos(std::sqrt(n / (n + 1.0))));
  const Trajectory t = ppa_run(op, vec2(1.0, 0.0), 1.0, n + 1);
  const Trajectory u = normalize(t, Vector::Zero(2));
  REQUIRE(u.lambda == 1.0);
  for (size_t k = 0; k < t.points.size(); ++k)
    REQUIRE((t.points[k] - u.points[k]).norm() == 0.0);
}

TEST_CASE("normalize maps the scale-10 rotation trajectory onto the unit one") {
  const int n = 5;
  const auto op = OperatorSpec::rotation(std::acos(std::sqrt(n / (n + 1.0))));
  const Trajectory big = ppa_run(op, vec2(10.0, 0.0), 1.0, n + 1);
  const Trajectory unit = ppa_run(op, vec2(1.0, 0.0), 1.0, n + 1);
  const Trajectory mapped = normalize(big, Vector::Zero(2));
  for (size_t k = 0; k < unit.points.size(); ++k)
    REQUIRE((mapped.points[k] - unit.points[k]).norm() < 1e-15);
  REQUIRE(performance_ratio(big, Vector::Zero(2)) ==
          Catch::Approx(performance_ratio(mapped, Vector::Zero(2))).epsilon(1e-12));
}

TEST_CASE("rescaling the operator per lambda preserves the ratio") {
  // epsilon(A, w0, w*, lambda, N) = epsilon(A o (lambda I), w0/lambda, w*/lambda, 1, N)
  const auto op = OperatorSpec::linear_monotone(Matrix::Identity(1, 1));
  const auto op_scaled = OperatorSpec::linear_monotone(2.0 * Matrix::Identity(1, 1));
  Vector w0(1), w_star(1);
  w0 << 3.0;
  w_star << 0.0;
  const Trajectory a = ppa_run(op, w0, 2.0, 4);
  const Trajectory b = ppa_run(op_scaled, w0 / 2.0, 1.0, 4);
  REQUIRE(performance_ratio(a, w_star) ==
          Catch::Approx(performance_ratio(b, w_star)).epsilon(1e-13));
}

TEST_CASE("randomized monotone runs: residuals, known bound, normalization") {
  std::mt19937 rng(61);
  std::uniform_int_distribution<int> dim_dist(1, 6), n_dist(1, 20);
  std::uniform_real_distribution<double> lambda_dist(0.1, 10.0), coord(-2.0, 2.0);
  for (int trial = 0; trial < 60; ++trial) {
    const int dim = dim_dist(rng), n = n_dist(rng);
    const auto op = OperatorSpec::linear_monotone(oracles::random_monotone_matrix(rng, dim));
    Vector w0(dim);
    for (int i = 0; i < dim; ++i) w0[i] = coord(rng);
    if (w0.norm() < 1e-6) continue;
    const double lambda = lambda_dist(rng);
    const Trajectory t = ppa_run(op, w0, lambda, n + 1);

    for (size_t k = 0; k + 1 < t.residual_norms.size(); ++k)
      REQUIRE(t.residual_norms[k + 1] <= t.residual_norms[k] + 1e-12);

    const double ratio = performance_ratio(t, Vector::Zero(dim));
    REQUIRE(ratio <= 1.0 / (n + 1) + 1e-9);

    const Trajectory u = normalize(t, Vector::Zero(dim));
    REQUIRE(std::abs(ratio - performance_ratio(u, Vector::Zero(dim))) <= 1e-12);
  }
}

TEST_CASE("operator and trajectory preconditions") {
  REQUIRE_THROWS_AS(OperatorSpec::linear_monotone(-Matrix::Identity(2, 2)),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(OperatorSpec::rotation(0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(OperatorSpec::rotation(M_PI / 2), std::invalid_argument);
  REQUIRE_THROWS_AS(OperatorSpec::linear_monotone(Matrix::Zero(2, 3)), std::invalid_argument);

  const auto op = OperatorSpec::rotation(0.5);
  REQUIRE_THROWS_AS(resolvent(op, 0.0, Vector::Zero(2)), std::invalid_argument);
  REQUIRE_THROWS_AS(resolvent(op, 1.0, Vector::Zero(3)), std::invalid_argument);
  REQUIRE_THROWS_AS(ppa_run(op, Vector::Zero(2), 1.0, 0), std::invalid_argument);

  const Trajectory t = ppa_run(op, vec2(1.0, 0.0), 1.0, 2);
  REQUIRE_THROWS_AS(performance_ratio(t, vec2(1.0, 0.0)), std::invalid_argument);
  REQUIRE_THROWS_AS(normalize(t, vec2(1.0, 0.0)), std::invalid_argument);
}

TEST_CASE("nonsymmetric monotone operators are accepted") {
  Matrix skew(2, 2);
  skew << 0.0, 1.0, -1.0, 0.0;
  const auto op = OperatorSpec::linear_monotone(skew);  // symmetric part is zero
  const Trajectory t = ppa_run(op, vec2(1.0, 0.0), 1.0, 3);
  for (size_t k = 0; k + 1 < t.residual_norms.size(); ++k)
    REQUIRE(t.residual_norms[k + 1] <= t.residual_norms[k] + 1e-12);
}
