#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "ppacert/dual_certificate.hpp"
#include "ppacert/error.hpp"
#include "ppacert/linalg.hpp"
#include "ppacert/pep.hpp"
#include "ppacert/rational.hpp"
#include "ppacert/sym_matrix.hpp"

namespace ppacert {

/// The two-dimensional extremal instance (rotation by theta with contraction
/// beta = cos(theta), beta^2 = N/(N+1)), stored as the exact rational Gram
/// matrix of the iterates w^0..w^{N+1}. The points themselves have
/// irrational coordinates; every pairwise inner product is rational, which
/// is what makes exact certification possible.
struct WorstCaseInstance {
  int n_iters = 0;
  Rational beta_sq;   // N/(N+1)
  SymMatrix gram;     // gram(i, j) = <w^i, w^j>, order N+2
  Rational achieved;  // beta^{2N} (1 - beta^2)
};

/// Builds the Gram matrix from the rational sequence c_k = beta^k cos(k
/// theta), which obeys c_0 = 1, c_1 = beta^2, c_{k+1} = beta^2 (2 c_k -
/// c_{k-1}); then <w^i, w^j> = beta^{2i} c_{j-i} for i <= j.
inline WorstCaseInstance build_gram(int n_iters) {
  if (n_iters < 1) throw std::invalid_argument("build_gram: N must be >= 1");
  const int N = n_iters;
  WorstCaseInstance inst;
  inst.n_iters = N;
  inst.beta_sq = Rational(N, N + 1);

  std::vector<Rational> c(static_cast<size_t>(N) + 2);
  c[0] = Rational(1);
  c[1] = inst.beta_sq;
  for (size_t k = 2; k < c.size(); ++k) c[k] = inst.beta_sq * (c[k - 1] + c[k - 1] - c[k - 2]);

  inst.gram = SymMatrix(N + 2);
  for (int i = 0; i <= N + 1; ++i) {
    const Rational scale = pow(inst.beta_sq, i);
    for (int j = i; j <= N + 1; ++j) inst.gram(i, j) = scale * c[static_cast<size_t>(j - i)];
  }
  inst.achieved = pow(inst.beta_sq, N) * (Rational(1) - inst.beta_sq);
  return inst;
}

/// Asserts, exactly, that every interpolation constraint holds with equality
/// on the extremal Gram: <A_{i,j}, X> = 0 for all pairs and <B_i, X> = 0 for
/// all i. A nonzero value names the violated pair.
inline void verify_equalities(const WorstCaseInstance& inst) {
  const PepInstance pep = build_instance(inst.n_iters);
  for (int i = 1; i <= inst.n_iters; ++i)
    for (int j = i + 1; j <= inst.n_iters + 1; ++j) {
      const Rational v = pep.a_value(i, j, inst.gram);
      if (!v.is_zero())
        throw CertificationError("primal: <A_{" + std::to_string(i) + "," + std::to_string(j) +
                                 "}, X> = " + v.to_string() + ", expected 0");
    }
  for (int i = 1; i <= inst.n_iters + 1; ++i) {
    const Rational v = pep.b_value(i, inst.gram);
    if (!v.is_zero())
      throw CertificationError("primal: <B_" + std::to_string(i) + ", X> = " + v.to_string() +
                               ", expected 0");
  }
}

/// beta^{2N} (1 - beta^2) = N^N / (N+1)^{N+1} at the optimal beta.
inline Rational achieved_ratio(int n_iters) {
  if (n_iters < 1) throw std::invalid_argument("achieved_ratio: N must be >= 1");
  const Rational q(n_iters, n_iters + 1);
  return pow(q, n_iters) * Rational(1, n_iters + 1);
}

/// Two-sided certificate of the optimal worst-case rate.
struct OptimalRate {
  Rational zeta;
  WorstCaseInstance primal;
  DualCertificate dual;
};

/// Certifies zeta(N) = N^N/(N+1)^{N+1} by (a) exact primal feasibility of
/// the extremal Gram (PSD, <E_11, X> = 1, every inequality active), (b) the
/// verified dual certificate, and (c) exact equality of the two objective
/// values (zero duality gap). Throws CertificationError naming the failing
/// stage.
inline OptimalRate certify_optimal_rate(int n_iters) {
  WorstCaseInstance primal = build_gram(n_iters);
  const PepInstance pep = build_instance(n_iters);

  const PsdResult gram_psd = psd_certify(primal.gram);
  if (!gram_psd.psd)
    throw CertificationError("primal: extremal Gram matrix is not PSD at N=" +
                             std::to_string(n_iters));
  if (pep.e_value(primal.gram) != Rational(1))
    throw CertificationError("primal: <E_11, X> != 1 at N=" + std::to_string(n_iters));
  verify_equalities(primal);

  const Rational eta = certified_upper_bound(n_iters);

  const Rational objective = pep.objective(primal.gram);
  if (objective != eta)
    throw CertificationError("gap: <C, X> = " + objective.to_string() +
                             " differs from eta = " + eta.to_string());
  if (primal.achieved != eta)
    throw CertificationError("gap: achieved ratio differs from eta at N=" +
                             std::to_string(n_iters));

  return {eta, std::move(primal), construct_certificate(n_iters)};
}

/// Floating coordinates scale * beta^k Theta^k (1,0)^T for k = 0..N+1.
inline std::vector<std::array<double, 2>> emit_points(int n_iters, double scale) {
  if (n_iters < 1) throw std::invalid_argument("emit_points: N must be >= 1");
  if (!(scale > 0)) throw std::invalid_argument("emit_points: scale must be positive");
  const double beta = std::sqrt(static_cast<double>(n_iters) / (n_iters + 1));
  const double theta = std::acos(beta);
  std::vector<std::array<double, 2>> pts;
  for (int k = 0; k <= n_iters + 1; ++k) {
    const double r = scale * std::pow(beta, k);
    pts.push_back({r * std::cos(k * theta), r * std::sin(k * theta)});
  }
  return pts;
}

}  // namespace ppacert
