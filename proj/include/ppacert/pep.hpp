#pragma once

#include <algorithm>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "ppacert/linalg.hpp"
#include "ppacert/rational.hpp"
#include "ppacert/sym_matrix.hpp"

namespace ppacert {

/// One nonzero of a constraint matrix, upper triangle, 0-based, integer.
struct MatrixEntry {
  int row;
  int col;
  int coeff;
};

namespace detail {

// sparse vector with merged duplicate indices
using SmallVec = std::vector<std::pair<int, int>>;

inline void add_unit(SmallVec& v, int index, int coeff) {
  for (auto& [i, c] : v)
    if (i == index) {
      c += coeff;
      return;
    }
  v.emplace_back(index, coeff);
}

inline int coeff_at(const SmallVec& v, int index) {
  for (const auto& [i, c] : v)
    if (i == index) return c;
  return 0;
}

inline std::vector<int> support_union(const SmallVec& u, const SmallVec& v) {
  std::vector<int> s;
  for (const auto& [i, c] : u) s.push_back(i);
  for (const auto& [i, c] : v) s.push_back(i);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

// upper-triangle entries of u v^T + v u^T
inline std::vector<MatrixEntry> sym_outer(const SmallVec& u, const SmallVec& v) {
  std::vector<MatrixEntry> out;
  const auto support = support_union(u, v);
  for (size_t a = 0; a < support.size(); ++a)
    for (size_t b = a; b < support.size(); ++b) {
      const int r = support[a], c = support[b];
      const int val = coeff_at(u, r) * coeff_at(v, c) + coeff_at(v, r) * coeff_at(u, c);
      if (val != 0) out.push_back({r, c, val});
    }
  return out;
}

// upper-triangle entries of u u^T
inline std::vector<MatrixEntry> rank_one(const SmallVec& u) {
  std::vector<MatrixEntry> out;
  for (size_t a = 0; a < u.size(); ++a)
    for (size_t b = a; b < u.size(); ++b) {
      auto [r, cr] = u[a];
      auto [c, cc] = u[b];
      if (r > c) std::swap(r, c);
      const int val = cr * cc;
      if (val != 0) out.push_back({r, c, val});
    }
  std::sort(out.begin(), out.end(),
            [](const MatrixEntry& x, const MatrixEntry& y) {
              return std::pair(x.row, x.col) < std::pair(y.row, y.col);
            });
  return out;
}

}  // namespace detail

/// The SDP data of the performance estimation problem for N iterations:
/// constraint matrices A_{i,j} (1 <= i < j <= N+1), B_i (1 <= i <= N+1),
/// E_11 and the objective C, all symmetric of order N+2. Matrices are
/// index-generated on demand; products against a Gram matrix use the sparse
/// nonzero lists directly.
class PepInstance {
public:
  explicit PepInstance(int n_iters) : n_(n_iters) {
    if (n_iters < 1) throw std::invalid_argument("PepInstance: N must be >= 1");
  }

  int n_iters() const { return n_; }
  int order() const { return n_ + 2; }

  /// Nonzeros of A_{i,j} = d xi^T + xi d^T with d = e_{i+1} - e_{j+1} and
  /// xi = (e_i - e_{i+1}) - (e_j - e_{j+1}); indices i, j are 1-based.
  std::vector<MatrixEntry> a_entries(int i, int j) const {
    require_pair(i, j);
    detail::SmallVec d, xi;
    detail::add_unit(d, i, 1);       // e_{i+1} in 0-based coordinates
    detail::add_unit(d, j, -1);
    detail::add_unit(xi, i - 1, 1);  // e_i
    detail::add_unit(xi, i, -1);
    detail::add_unit(xi, j - 1, -1);
    detail::add_unit(xi, j, 1);
    return detail::sym_outer(d, xi);
  }

  /// Nonzeros of B_i = e_{i+1}(e_i - e_{i+1})^T + (e_i - e_{i+1})e_{i+1}^T.
  std::vector<MatrixEntry> b_entries(int i) const {
    require_row(i);
    detail::SmallVec u, v;
    detail::add_unit(u, i, 1);
    detail::add_unit(v, i - 1, 1);
    detail::add_unit(v, i, -1);
    return detail::sym_outer(u, v);
  }

  SymMatrix a_mat(int i, int j) const { return materialize(a_entries(i, j)); }
  SymMatrix b_mat(int i) const { return materialize(b_entries(i)); }

  SymMatrix e11() const {
    SymMatrix m(order());
    m(0, 0) = Rational(1);
    return m;
  }

  /// C = (e_{N+1} - e_{N+2})(e_{N+1} - e_{N+2})^T.
  SymMatrix c_mat() const {
    detail::SmallVec u;
    detail::add_unit(u, n_, 1);
    detail::add_unit(u, n_ + 1, -1);
    return materialize(detail::rank_one(u));
  }

  Rational a_value(int i, int j, const SymMatrix& x) const {
    return sparse_inner(a_entries(i, j), x);
  }
  Rational b_value(int i, const SymMatrix& x) const {
    return sparse_inner(b_entries(i), x);
  }
  Rational e_value(const SymMatrix& x) const {
    require_order(x);
    return x(0, 0);
  }
  Rational objective(const SymMatrix& x) const {
    require_order(x);
    return x(n_, n_) - x(n_, n_ + 1) - x(n_, n_ + 1) + x(n_ + 1, n_ + 1);
  }

private:
  void require_pair(int i, int j) const {
    if (!(1 <= i && i < j && j <= n_ + 1))
      throw std::invalid_argument("PepInstance: pair index out of range");
  }
  void require_row(int i) const {
    if (!(1 <= i && i <= n_ + 1))
      throw std::invalid_argument("PepInstance: row index out of range");
  }
  void require_order(const SymMatrix& x) const {
    if (x.order() != order())
      throw std::invalid_argument("PepInstance: Gram order mismatch");
  }
  SymMatrix materialize(const std::vector<MatrixEntry>& entries) const {
    SymMatrix m(order());
    for (const auto& e : entries) m(e.row, e.col) = Rational(e.coeff);
    return m;
  }
  Rational sparse_inner(const std::vector<MatrixEntry>& entries, const SymMatrix& x) const {
    require_order(x);
    Rational sum;
    for (const auto& e : entries) {
      Rational t = Rational(e.coeff) * x(e.row, e.col);
      sum += (e.row == e.col) ? t : t + t;
    }
    return sum;
  }

  int n_;
};

inline PepInstance build_instance(int n_iters) { return PepInstance(n_iters); }

/// All constraint values of the SDP at a candidate Gram matrix x.
struct ConstraintValues {
  std::map<std::pair<int, int>, Rational> a_vals;  // keyed by 1-based (i, j)
  std::vector<Rational> b_vals;                    // b_vals[i-1] = <B_i, x>
  Rational e_val;
  Rational objective;
};

inline ConstraintValues constraint_values(const PepInstance& inst, const SymMatrix& x) {
  ConstraintValues v;
  for (int i = 1; i <= inst.n_iters(); ++i)
    for (int j = i + 1; j <= inst.n_iters() + 1; ++j)
      v.a_vals[{i, j}] = inst.a_value(i, j, x);
  for (int i = 1; i <= inst.n_iters() + 1; ++i) v.b_vals.push_back(inst.b_value(i, x));
  v.e_val = inst.e_value(x);
  v.objective = inst.objective(x);
  return v;
}

/// Monotone-interpolability report for a finite set of (point, value) pairs:
/// pair_products holds <w_i - w_j, u_i - u_j> for i < j (0-based into the
/// input list), anchor_products holds <w_i, u_i> (the pair (0, 0) being the
/// implicit anchor). Exact scalars use an exact zero threshold; floating
/// scalars tolerate -1e-12.
template <class Scalar>
struct InterpolationReport {
  std::map<std::pair<int, int>, Scalar> pair_products;
  std::vector<Scalar> anchor_products;
  bool interpolable = false;
};

namespace detail {

template <class Scalar>
Scalar interpolation_slack() {
  if constexpr (std::is_floating_point_v<Scalar>)
    return Scalar(-1e-12);
  else
    return Scalar(0);
}

}  // namespace detail

template <class Vec>
auto check_interpolable(const std::vector<std::pair<Vec, Vec>>& points, bool include_anchor) {
  using Scalar = std::decay_t<decltype(points[0].first[0])>;
  const auto dim = points.empty() ? 0 : points[0].first.size();
  auto dot_diff = [&](const Vec& a, const Vec& b, const Vec& c, const Vec& d) {
    if (a.size() != dim || b.size() != dim || c.size() != dim || d.size() != dim)
      throw std::invalid_argument("check_interpolable: dimension mismatch");
    Scalar s{};
    for (decltype(a.size()) k = 0; k < dim; ++k)
      s += (a[k] - b[k]) * (c[k] - d[k]);
    return s;
  };

  InterpolationReport<Scalar> report;
  const Vec zero = points.empty() ? Vec{} : [&] {
    Vec z = points[0].first;
    for (decltype(z.size()) k = 0; k < dim; ++k) z[k] = Scalar{};
    return z;
  }();

  const int n = static_cast<int>(points.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      report.pair_products[{i, j}] =
          dot_diff(points[i].first, points[j].first, points[i].second, points[j].second);
  if (include_anchor)
    for (int i = 0; i < n; ++i)
      report.anchor_products.push_back(
          dot_diff(points[i].first, zero, points[i].second, zero));

  const Scalar slack = detail::interpolation_slack<Scalar>();
  report.interpolable = true;
  for (const auto& [key, p] : report.pair_products)
    if (p < slack) report.interpolable = false;
  for (const auto& p : report.anchor_products)
    if (p < slack) report.interpolable = false;
  return report;
}

/// Writes the SDP in sparse SDPA (.dat-s) text form: one PSD block of order
/// N+2, the objective block C, every A_{i,j} (lexicographic) and B_i as a
/// one-sided constraint <F_c, X> >= rhs_c with rhs 0, and <E_11, X> = 1
/// split into the two rows <E_11, X> >= 1 and <-E_11, X> >= -1. Entries are
/// upper-triangle, 1-based, rendered as 17-significant-digit decimals.
inline void export_sdpa(const PepInstance& inst, std::ostream& os) {
  const int n = inst.n_iters();
  const int num_a = n * (n + 1) / 2;
  const int num_b = n + 1;
  const int m = num_a + num_b + 2;

  os << m << "\n";
  os << 1 << "\n";
  os << inst.order() << "\n";
  for (int c = 0; c < num_a + num_b; ++c) os << "0 ";
  os << "1 -1\n";

  auto put = [&](int constraint, const std::vector<MatrixEntry>& entries, int sign) {
    for (const auto& e : entries)
      os << constraint << " 1 " << e.row + 1 << " " << e.col + 1 << " "
         << Rational(sign * e.coeff).to_decimal() << "\n";
  };

  // objective block (matrix 0)
  {
    detail::SmallVec u;
    detail::add_unit(u, n, 1);
    detail::add_unit(u, n + 1, -1);
    put(0, detail::rank_one(u), 1);
  }
  int c = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n + 1; ++j) put(c++, inst.a_entries(i, j), 1);
  for (int i = 1; i <= n + 1; ++i) put(c++, inst.b_entries(i), 1);
  put(c++, {{0, 0, 1}}, 1);
  put(c++, {{0, 0, 1}}, -1);

  os.flush();
  if (!os.good()) throw std::runtime_error("export_sdpa: write failure");
}

}  // namespace ppacert
