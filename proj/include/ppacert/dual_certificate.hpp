#pragma once

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "ppacert/error.hpp"
#include "ppacert/linalg.hpp"
#include "ppacert/pep.hpp"
#include "ppacert/rational.hpp"
#include "ppacert/sym_matrix.hpp"

namespace ppacert {

/// Closed-form dual multipliers for the PEP SDP after N iterations:
/// lambda_{i,i+1} = (N/(N+1))^{N-i} * i/(N+1) for i = 1..N (all other pair
/// multipliers vanish), mu_i = (N/(N+1))^{N-i} * (N-i)/(N+1)^2 for i = 1..N,
/// mu_{N+1} = 1/(N+1), eta = (N/(N+1))^N / (N+1).
struct DualCertificate {
  int n_iters = 0;
  std::vector<Rational> lambda_chain;  // lambda_{i,i+1}, entry i-1
  std::vector<Rational> mu;            // mu_i, entry i-1
  Rational eta;

  /// lambda_{i,j} for any 1-based pair 1 <= i < j <= N+1.
  Rational lambda(int i, int j) const {
    if (!(1 <= i && i < j && j <= n_iters + 1))
      throw std::invalid_argument("DualCertificate: pair index out of range");
    return j == i + 1 ? lambda_chain[static_cast<size_t>(i) - 1] : Rational(0);
  }
};

inline DualCertificate construct_certificate(int n_iters) {
  if (n_iters < 1) throw std::invalid_argument("construct_certificate: N must be >= 1");
  const int N = n_iters;
  const Rational q(N, N + 1);
  DualCertificate cert;
  cert.n_iters = N;
  for (int i = 1; i <= N; ++i) {
    cert.lambda_chain.push_back(pow(q, N - i) * Rational(i, N + 1));
    cert.mu.push_back(pow(q, N - i) * Rational(N - i, static_cast<long>(N + 1) * (N + 1)));
  }
  cert.mu.push_back(Rational(1, N + 1));
  cert.eta = pow(q, N) * Rational(1, N + 1);
  return cert;
}

/// M = eta E_11 - C - sum lambda_{i,j} A_{i,j} - sum mu_i B_i, exact.
inline SymMatrix assemble_m(const DualCertificate& cert, const PepInstance& inst) {
  if (cert.n_iters != inst.n_iters())
    throw std::invalid_argument("assemble_m: certificate and instance disagree on N");
  const int N = inst.n_iters();
  SymMatrix m(inst.order());
  m(0, 0) = cert.eta;
  // -C
  m(N, N) -= Rational(1);
  m(N, N + 1) += Rational(1);
  m(N + 1, N + 1) -= Rational(1);
  for (int i = 1; i <= N; ++i)
    for (int j = i + 1; j <= N + 1; ++j) {
      const Rational l = cert.lambda(i, j);
      if (l.is_zero()) continue;
      for (const auto& e : inst.a_entries(i, j)) m(e.row, e.col) -= l * Rational(e.coeff);
    }
  for (int i = 1; i <= N + 1; ++i) {
    const Rational& u = cert.mu[static_cast<size_t>(i) - 1];
    if (u.is_zero()) continue;
    for (const auto& e : inst.b_entries(i)) m(e.row, e.col) -= u * Rational(e.coeff);
  }
  return m;
}

namespace detail {

inline Rational qpow(int n_iters, int e) { return pow(Rational(n_iters, n_iters + 1), e); }

}  // namespace detail

/// Pentadiagonal M built directly from its closed-form nonzero entries.
/// Defined for N >= 2 (the generic index ranges are empty or overlapping at
/// N = 1); the direct assembly is the authoritative construction.
inline SymMatrix closed_form_entries(int n_iters) {
  if (n_iters < 2)
    throw std::invalid_argument("closed_form_entries: N must be >= 2; use assemble_m");
  const int N = n_iters;
  const long np1 = N + 1;
  auto q = [&](int e) { return detail::qpow(N, e); };
  SymMatrix m(N + 2);
  // 1-based entry accessor
  auto at = [&](int a, int b) -> Rational& { return m(a - 1, b - 1); };

  at(1, 1) = q(N) * Rational(1, np1);
  for (int i = 2; i <= N; ++i)
    at(i, i) = q(N + 1 - i) * Rational(static_cast<long>(i - 1) * (6L * N + 2), np1 * np1);
  at(N + 1, N + 1) = Rational(5L * N * N - 1, np1 * np1);
  at(N + 2, N + 2) = Rational(1);

  at(1, 2) = -(q(N) * Rational(2, np1));
  for (int i = 2; i <= N; ++i) at(i, i + 1) = -(q(N + 1 - i) * Rational(4L * i - 2, np1));
  at(N + 1, N + 2) = Rational(-2L * N, np1);

  for (int i = 1; i <= N; ++i) at(i, i + 2) = q(N - i) * Rational(i, np1);
  return m;
}

enum class PsdPath { kAppendixRecursion, kGeneralLdlt };

struct VerifiedCertificate {
  Rational eta;
  PsdPath path;
};

namespace detail {

inline void expect_entry(const SymMatrix& m, int a, int b, const Rational& want,
                         const std::string& where) {
  if (m(a - 1, b - 1) != want)
    throw CertificationError("dual: " + where + " mismatch at entry (" + std::to_string(a) +
                             "," + std::to_string(b) + "): got " + m(a - 1, b - 1).to_string() +
                             ", expected " + want.to_string());
}

// Checks the three live columns k-2..k of the order-k reduced matrix against
// their closed form; everything above the trailing 2x2 block is an untouched
// entry of M, the trailing block carries the reduction updates.
inline void check_recursion_window(const SymMatrix& cur, int k, int n_iters) {
  const int N = n_iters;
  const long np1 = N + 1;
  auto q = [&](int e) { return qpow(N, e); };
  const std::string where = "recursion window k=" + std::to_string(k);

  for (int a = 1; a <= k - 5; ++a)
    for (int b = k - 2; b <= k; ++b) expect_entry(cur, a, b, Rational(0), where);

  expect_entry(cur, k - 4, k - 2, q(N + 4 - k) * Rational(k - 4, np1), where);
  expect_entry(cur, k - 4, k - 1, Rational(0), where);
  expect_entry(cur, k - 4, k, Rational(0), where);

  expect_entry(cur, k - 3, k - 2, -(q(N + 4 - k) * Rational(4L * k - 14, np1)), where);
  expect_entry(cur, k - 3, k - 1, q(N + 3 - k) * Rational(k - 3, np1), where);
  expect_entry(cur, k - 3, k, Rational(0), where);

  expect_entry(cur, k - 2, k - 2,
               q(N + 3 - k) * Rational(static_cast<long>(k - 3) * (6L * N + 2), np1 * np1),
               where);
  expect_entry(cur, k - 2, k - 1, -(q(N + 3 - k) * Rational(4L * k - 10, np1)), where);
  expect_entry(cur, k - 2, k, q(N + 2 - k) * Rational(k - 2, np1), where);

  expect_entry(cur, k - 1, k - 1,
               q(N + 2 - k) * Rational((5L * k - 11) * N + (k - 3), np1 * np1), where);
  expect_entry(cur, k - 1, k, -(q(N + 2 - k) * Rational(2L * k - 4, np1)), where);

  const Rational pivot = q(N + 1 - k) * Rational(k - 2, np1);
  expect_entry(cur, k, k, pivot, where);
  if (!(pivot.sign() > 0))
    throw CertificationError("dual: nonpositive pivot at k=" + std::to_string(k));
}

// Terminal order-4 matrix of the recursion, in closed form.
inline SymMatrix m4_closed_form(int n_iters) {
  const int N = n_iters;
  const long np1 = N + 1;
  auto q = [&](int e) { return qpow(N, e); };
  SymMatrix m(4);
  m(0, 0) = q(N) * Rational(1, np1);
  m(0, 1) = -(q(N) * Rational(2, np1));
  m(0, 2) = q(N - 1) * Rational(1, np1);
  m(1, 1) = q(N - 1) * Rational(6L * N + 2, np1 * np1);
  m(1, 2) = -(q(N - 1) * Rational(6, np1));
  m(1, 3) = q(N - 2) * Rational(2, np1);
  m(2, 2) = q(N - 2) * Rational(9L * N + 1, np1 * np1);
  m(2, 3) = -(q(N - 2) * Rational(4, np1));
  m(3, 3) = q(N - 3) * Rational(2, np1);
  return m;
}

// Terminal order-3 matrix of the recursion, in closed form.
inline SymMatrix m3_closed_form(int n_iters) {
  const int N = n_iters;
  const long np1 = N + 1;
  auto q = [&](int e) { return qpow(N, e); };
  SymMatrix m(3);
  m(0, 0) = q(N) * Rational(1, np1);
  m(0, 1) = -(q(N) * Rational(2, np1));
  m(0, 2) = q(N - 1) * Rational(1, np1);
  m(1, 1) = q(N - 1) * Rational(4L * N, np1 * np1);
  m(1, 2) = -(q(N - 1) * Rational(2, np1));
  m(2, 2) = q(N - 2) * Rational(1, np1);
  return m;
}

inline void expect_matrix(const SymMatrix& got, const SymMatrix& want, const std::string& where) {
  for (int a = 1; a <= got.order(); ++a)
    for (int b = a; b <= got.order(); ++b) expect_entry(got, a, b, want(a - 1, b - 1), where);
}

}  // namespace detail

/// Constructs the dual certificate for N iterations, assembles M, and proves
/// M >= 0 exactly. For N >= 4 the proof follows the last-pivot Schur
/// recursion, checking the closed-form column window and the pivot law
/// M^[k]_{k,k} = (N/(N+1))^{N+1-k} (k-2)/(N+1) at every order k = N+1..5,
/// then the explicit order-4 and order-3 matrices, and finally that the
/// order-2 remainder is the zero matrix. For N <= 3 the general exact
/// factorization decides directly. Any mismatch throws CertificationError:
/// it would falsify the certificate.
inline VerifiedCertificate verify_certificate(int n_iters) {
  if (n_iters < 1) throw std::invalid_argument("verify_certificate: N must be >= 1");
  const int N = n_iters;
  const DualCertificate cert = construct_certificate(N);

  for (const auto& l : cert.lambda_chain)
    if (l.sign() < 0) throw CertificationError("dual: negative lambda multiplier");
  for (const auto& u : cert.mu)
    if (u.sign() < 0) throw CertificationError("dual: negative mu multiplier");
  if (cert.eta.sign() < 0) throw CertificationError("dual: negative eta");

  const PepInstance inst = build_instance(N);
  const SymMatrix m = assemble_m(cert, inst);

  if (N <= 3) {
    const PsdResult res = psd_certify(m);
    if (!res.psd)
      throw CertificationError("dual: M is not PSD at N=" + std::to_string(N));
    return {cert.eta, PsdPath::kGeneralLdlt};
  }

  detail::expect_entry(m, N + 2, N + 2, Rational(1), "first pivot");
  SymMatrix cur = schur_reduce(m, N + 2);
  for (int k = N + 1; k >= 5; --k) {
    detail::check_recursion_window(cur, k, N);
    cur = schur_reduce(cur, k);
  }
  detail::expect_matrix(cur, detail::m4_closed_form(N), "terminal order-4 matrix");
  cur = schur_reduce(cur, 4);
  detail::expect_matrix(cur, detail::m3_closed_form(N), "terminal order-3 matrix");
  cur = schur_reduce(cur, 3);
  detail::expect_matrix(cur, SymMatrix(2), "terminal order-2 matrix");

  return {cert.eta, PsdPath::kAppendixRecursion};
}

namespace detail {

inline std::mutex& bound_memo_mutex() {
  static std::mutex m;
  return m;
}
inline std::map<int, Rational>& bound_memo() {
  static std::map<int, Rational> memo;
  return memo;
}

}  // namespace detail

/// The certified worst-case bound N^N/(N+1)^{N+1}, returned only after the
/// dual certificate for this N has been verified (results are memoized per
/// process; concurrent callers may verify independent N in parallel).
inline Rational certified_upper_bound(int n_iters) {
  {
    std::lock_guard<std::mutex> lock(detail::bound_memo_mutex());
    auto it = detail::bound_memo().find(n_iters);
    if (it != detail::bound_memo().end()) return it->second;
  }
  const VerifiedCertificate v = verify_certificate(n_iters);
  mpz_class num, den;
  mpz_ui_pow_ui(num.get_mpz_t(), static_cast<unsigned long>(n_iters),
                static_cast<unsigned long>(n_iters));
  mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(n_iters) + 1,
                static_cast<unsigned long>(n_iters) + 1);
  const Rational bound(num, den);
  if (bound != v.eta)
    throw CertificationError("dual: eta does not match N^N/(N+1)^{N+1}");
  {
    std::lock_guard<std::mutex> lock(detail::bound_memo_mutex());
    detail::bound_memo().emplace(n_iters, bound);
  }
  return bound;
}

}  // namespace ppacert
