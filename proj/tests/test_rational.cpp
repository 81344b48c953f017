#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "ppacert/rational.hpp"

using ppacert::Rational;

TEST_CASE("rational arithmetic is exact and canonical") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const Rational a = oracles::random_rational(rng, 1000000, 99991);
    const Rational b = oracles::random_rational(rng, 1000000, 99991);
    REQUIRE((a + b) - b == a);
    REQUIRE((a - b) + b == a);
    if (!b.is_zero()) REQUIRE((a * b) / b == a);
    // lowest terms, positive denominator
    const Rational c = a * b + a;
    REQUIRE(c.den() > 0);
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), c.num().get_mpz_t(), c.den().get_mpz_t());
    REQUIRE((c.is_zero() ? c.den() == 1 : g == 1));
  }
}

TEST_CASE("rational construction normalizes") {
  REQUIRE(Rational(2, 4) == Rational(1, 2));
  REQUIRE(Rational(1, -2) == Rational(-1, 2));
  REQUIRE(Rational(1, -2).den() == 2);
  REQUIRE(Rational(0, 5).den() == 1);
  REQUIRE(Rational("3/6") == Rational(1, 2));
  REQUIRE(Rational("-42") == Rational(-42));
  REQUIRE_THROWS_AS(Rational(1, 0), std::domain_error);
  REQUIRE_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("rational from_double is exact") {
  REQUIRE(Rational::from_double(0.5) == Rational(1, 2));
  REQUIRE(Rational::from_double(-0.25) == Rational(-1, 4));
  // 0.1 is the nearest binary double, not 1/10
  REQUIRE(Rational::from_double(0.1) ==
          Rational(mpz_class("3602879701896397"), mpz_class("36028797018963968")));
}

TEST_CASE("rational pow") {
  REQUIRE(pow(Rational(2, 3), 3) == Rational(8, 27));
  REQUIRE(pow(Rational(2, 3), 0) == Rational(1));
  REQUIRE(pow(Rational(2, 3), -2) == Rational(9, 4));
  REQUIRE_THROWS_AS(pow(Rational(0), -1), std::domain_error);
}

TEST_CASE("decimal rendering") {
  REQUIRE(Rational(1, 4).to_decimal() == "0.25");
  REQUIRE(Rational(0).to_decimal() == "0");
  REQUIRE(Rational(2).to_decimal() == "2");
  REQUIRE(Rational(-4).to_decimal() == "-4");
  REQUIRE(Rational(1, 3).to_decimal() == "0.33333333333333333");
  REQUIRE(Rational(2, 3).to_decimal() == "0.66666666666666667");
  REQUIRE(Rational(1, 101).to_decimal() == "0.009900990099009901");
  // round half to even
  REQUIRE(Rational(1, 8).to_decimal(2) == "0.12");
  REQUIRE(Rational(3, 8).to_decimal(2) == "0.38");
  // scientific fallbacks
  REQUIRE(Rational(1, 1000000000000L).to_decimal() == "1e-12");
  REQUIRE(Rational(mpz_class("100000000000000000000")).to_decimal() == "1e20");
  // carry across a power of ten: 0.9999 -> 1 at 3 digits
  REQUIRE(Rational(9999, 10000).to_decimal(3) == "1");
}

TEST_CASE("decimal rendering round-trips through the independent parser") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    // values exactly representable in <= 17 significant digits round-trip
    std::uniform_int_distribution<long> digits(-99999999, 99999999);
    std::uniform_int_distribution<int> scale(0, 8);
    const long d = digits(rng);
    if (d == 0) continue;
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(scale(rng)));
    const Rational v(mpz_class(d), p10);
    REQUIRE(oracles::parse_decimal(v.to_decimal()) == v);
  }
}

TEST_CASE("fraction rendering") {
  REQUIRE(Rational(1, 4).to_string() == "1/4");
  REQUIRE(Rational(5).to_string() == "5");
  REQUIRE(Rational(-3, 7).to_string() == "-3/7");
}
