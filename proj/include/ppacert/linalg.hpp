#pragma once

#include <stdexcept>
#include <vector>

#include "ppacert/rational.hpp"
#include "ppacert/sym_matrix.hpp"

namespace ppacert {

/// Trace inner product <a, b> = sum_{i,j} a_ij * b_ij, exact.
inline Rational trace_inner(const SymMatrix& a, const SymMatrix& b) {
  if (a.order() != b.order())
    throw std::invalid_argument("trace_inner: order mismatch");
  Rational sum;
  for (int i = 0; i < a.order(); ++i)
    for (int j = i; j < a.order(); ++j) {
      Rational t = a(i, j) * b(i, j);
      sum += (i == j) ? t : t + t;
    }
  return sum;
}

/// v^T m v, exact.
inline Rational quadratic_form(const SymMatrix& m, const std::vector<Rational>& v) {
  if (static_cast<int>(v.size()) != m.order())
    throw std::invalid_argument("quadratic_form: size mismatch");
  Rational sum;
  for (int i = 0; i < m.order(); ++i) {
    if (v[i].is_zero()) continue;
    for (int j = 0; j < m.order(); ++j) {
      if (v[j].is_zero()) continue;
      sum += m(i, j) * v[i] * v[j];
    }
  }
  return sum;
}

/// Outcome of psd_certify. When psd, rank counts the positive pivots of an
/// exact pivoted LDL^T factorization; otherwise witness satisfies
/// witness^T m witness < 0 exactly.
struct PsdResult {
  bool psd = false;
  int rank = 0;
  std::vector<Rational> witness;
};

/// Exact positive-semidefiniteness decision by LDL^T with symmetric
/// pivoting on the largest remaining diagonal entry. A zero pivot with a
/// zero residual row is skipped (rank deficiency); a zero pivot with a
/// coupled row, or any negative pivot, yields a NotPSD witness.
inline PsdResult psd_certify(const SymMatrix& m) {
  const int n = m.order();
  std::vector<std::vector<Rational>> w(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w[i][j] = m(i, j);

  enum State : char { kActive, kPivoted, kDropped };
  std::vector<char> state(n, kActive);
  std::vector<int> pivots;

  // Extends a seed supported on still-active indices to a full vector by
  // zeroing, pivot by pivot in reverse elimination order, the square terms
  // of the factorized quadratic form; the value of v^T m v is then the
  // value of the reduced form on the seed.
  auto extend_witness = [&](std::vector<Rational> x) {
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
      const int p = *it;
      Rational s;
      for (int j = 0; j < n; ++j)
        if (j != p && !x[j].is_zero()) s += w[p][j] * x[j];
      x[p] = -s / w[p][p];
    }
    return x;
  };
  auto not_psd = [&](std::vector<Rational> seed) {
    PsdResult res;
    res.psd = false;
    res.witness = extend_witness(std::move(seed));
    return res;
  };

  int rank = 0;
  while (true) {
    int r = -1;
    for (int i = 0; i < n; ++i)
      if (state[i] == kActive && (r < 0 || w[i][i] > w[r][r])) r = i;
    if (r < 0) return PsdResult{true, rank, {}};

    if (w[r][r].sign() > 0) {
      std::vector<int> act;
      for (int i = 0; i < n; ++i)
        if (state[i] == kActive && i != r) act.push_back(i);
      for (int i : act) {
        if (w[i][r].is_zero()) continue;
        const Rational ratio = w[i][r] / w[r][r];
        for (int j : act) {
          if (j < i || w[r][j].is_zero()) continue;
          w[i][j] -= ratio * w[r][j];
          w[j][i] = w[i][j];
        }
      }
      state[r] = kPivoted;
      pivots.push_back(r);
      ++rank;
      continue;
    }

    if (w[r][r].sign() < 0) {
      std::vector<Rational> seed(n);
      seed[r] = Rational(1);
      return not_psd(std::move(seed));
    }

    // Largest remaining diagonal is zero: a zero-diagonal index either has a
    // zero residual row (skip) or couples to some other index (not PSD).
    for (int i = 0; i < n; ++i) {
      if (state[i] != kActive || !w[i][i].is_zero()) continue;
      int coupled = -1;
      for (int j = 0; j < n; ++j)
        if (j != i && state[j] == kActive && !w[i][j].is_zero()) {
          coupled = j;
          break;
        }
      if (coupled >= 0) {
        // On span{e_i, e_j}: value 2 t w_ij + w_jj = -1 for this t.
        std::vector<Rational> seed(n);
        seed[coupled] = Rational(1);
        seed[i] = -(w[coupled][coupled] + Rational(1)) / (Rational(2) * w[i][coupled]);
        return not_psd(std::move(seed));
      }
      state[i] = kDropped;
    }
  }
}

/// One Schur-complement reduction step on the last row/column: for m of
/// order k with m(k,k) > 0, returns H - b b^T / c of order k-1, where H is
/// the leading principal block, b the last column above the diagonal and
/// c the last diagonal entry. The index k is 1-based and must equal the
/// order (the reduction always acts on the trailing entry).
inline SymMatrix schur_reduce(const SymMatrix& m, int k) {
  if (k != m.order())
    throw std::invalid_argument("schur_reduce: index must equal the matrix order");
  if (k < 1) throw std::invalid_argument("schur_reduce: empty matrix");
  const int last = k - 1;
  const Rational& c = m(last, last);
  if (!(c.sign() > 0))
    throw std::domain_error("schur_reduce: pivot not positive; fall back to psd_certify");
  SymMatrix out(k - 1);
  for (int i = 0; i < k - 1; ++i)
    for (int j = i; j < k - 1; ++j) out(i, j) = m(i, j) - m(i, last) * m(j, last) / c;
  return out;
}

}  // namespace ppacert
