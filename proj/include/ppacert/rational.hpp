#pragma once

#include <gmpxx.h>

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>

namespace ppacert {

/// Arbitrary-precision rational, kept in lowest terms with positive
/// denominator (zero is 0/1). Thin value wrapper around GMP's mpq_class;
/// every arithmetic result is canonical.
class Rational {
public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}
  Rational(long n) : v_(static_cast<signed long>(n)) {}
  Rational(long num, long den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  explicit Rational(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }
  explicit Rational(const mpz_class& num, const mpz_class& den = 1) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  /// Parses "a" or "a/b" in base 10.
  explicit Rational(const std::string& s) {
    if (v_.set_str(s, 10) != 0)
      throw std::invalid_argument("Rational: cannot parse '" + s + "'");
    if (v_.get_den() == 0) throw std::domain_error("Rational: zero denominator");
    v_.canonicalize();
  }

  /// Exact conversion of a finite double (every finite double is rational).
  static Rational from_double(double d) {
    Rational r;
    mpq_set_d(r.v_.get_mpq_t(), d);
    return r;
  }

  const mpz_class& num() const { return v_.get_num(); }
  const mpz_class& den() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }

  double to_double() const { return v_.get_d(); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { Rational r; r.v_ = -a.v_; return r; }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
  friend bool operator!=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) != 0; }
  friend bool operator<(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) < 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) <= 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) > 0; }
  friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) >= 0; }

  /// "a" or "a/b".
  std::string to_string() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  /// Exact decimal rendering with the given number of significant digits,
  /// round-half-even, trailing zeros trimmed ("1/4" -> "0.25"). Falls back
  /// to scientific notation outside [1e-6, 1e17).
  std::string to_decimal(int sig_digits = 17) const;

private:
  mpq_class v_;
};

inline Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

/// a^e, with a != 0 required for e < 0.
inline Rational pow(const Rational& a, long e) {
  if (e == 0) return Rational(1);
  if (e < 0) {
    if (a.is_zero()) throw std::domain_error("Rational: pow of zero with negative exponent");
    return Rational(1) / pow(a, -e);
  }
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), a.num().get_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), a.den().get_mpz_t(), static_cast<unsigned long>(e));
  return Rational(n, d);
}

namespace detail {
inline mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}
}  // namespace detail

inline std::string Rational::to_decimal(int sig_digits) const {
  if (sig_digits < 1) throw std::invalid_argument("to_decimal: sig_digits < 1");
  if (is_zero()) return "0";
  const bool neg = sign() < 0;
  const mpz_class n = ::abs(num());
  const mpz_class& d = den();

  // sign of n/d - 10^e
  auto cmp_pow10 = [&](long e) {
    if (e >= 0) return cmp(n, mpz_class(d * detail::pow10(static_cast<unsigned long>(e))));
    return cmp(mpz_class(n * detail::pow10(static_cast<unsigned long>(-e))), d);
  };
  // find E with 10^E <= n/d < 10^{E+1}
  long E = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 10));
  while (cmp_pow10(E) < 0) --E;
  while (cmp_pow10(E + 1) >= 0) ++E;

  // q = round_half_even((n/d) * 10^{sig-1-E}), a sig_digits-digit integer
  const long shift = sig_digits - 1 - E;
  mpz_class num2 = n, den2 = d;
  if (shift >= 0)
    num2 *= detail::pow10(static_cast<unsigned long>(shift));
  else
    den2 *= detail::pow10(static_cast<unsigned long>(-shift));
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num2.get_mpz_t(), den2.get_mpz_t());
  const int half = cmp(mpz_class(2 * r), den2);
  if (half > 0 || (half == 0 && mpz_odd_p(q.get_mpz_t()))) ++q;
  if (q == detail::pow10(static_cast<unsigned long>(sig_digits))) {
    q /= 10;
    ++E;
  }

  std::string digits = q.get_str();
  digits.erase(digits.find_last_not_of('0') + 1);

  std::string out;
  if (E >= 0 && E <= sig_digits - 1) {
    if (static_cast<size_t>(E) + 1 >= digits.size()) {
      digits.append(static_cast<size_t>(E) + 1 - digits.size(), '0');
      out = digits;
    } else {
      out = digits.substr(0, static_cast<size_t>(E) + 1) + "." +
            digits.substr(static_cast<size_t>(E) + 1);
    }
  } else if (E < 0 && E >= -6) {
    out = "0." + std::string(static_cast<size_t>(-E) - 1, '0') + digits;
  } else {
    out = digits.substr(0, 1);
    if (digits.size() > 1) out += "." + digits.substr(1);
    out += "e" + std::to_string(E);
  }
  return neg ? "-" + out : out;
}

}  // namespace ppacert
