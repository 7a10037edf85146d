#include <doctest.h>

#include <numeric>

#include "defekt/errors.hpp"
#include "defekt/prime_field.hpp"
#include "defekt/rational.hpp"
#include "support/generators.hpp"

using namespace defekt;

namespace {

// Cross-multiplication on raw machine integers, reduced by hand.
std::pair<long, long> raw_add(long a, long b, long c, long d) {
  long n = a * d + c * b;
  long m = b * d;
  long g = std::gcd(n, m);
  if (m / g < 0) g = -g;
  return {n / g, m / g};
}

Rational random_rational(testing::Rng& rng) {
  long den = rng.uniform(1, 40);
  return Rational(BigInt(rng.uniform(-60, 60)), BigInt(den));
}

}  // namespace

TEST_CASE("rational arithmetic examples") {
  CHECK((Rational(1, 2) + Rational(1, 2)).str() == "1");
  CHECK((Rational(-1, 3) * Rational(3)).str() == "-1");
  auto [n, d] = raw_add(-1, 4, -1, 8);
  CHECK(Rational(-1, 4) + Rational(-1, 8) == Rational(BigInt(n), BigInt(d)));
  CHECK((Rational(-1, 4) + Rational(-1, 8)).str() == "-3/8");
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK_THROWS_AS(Rational(1) / Rational(0), DivisionByZero);
  CHECK_THROWS_AS(Rational(1, 0), DivisionByZero);
}

TEST_CASE("rational canonical form and parsing") {
  Rational r(BigInt(6), BigInt(-8));
  CHECK(r.num() == -3);
  CHECK(r.den() == 4);
  CHECK(Rational(r.num(), r.den()) == r);
  CHECK(Rational::parse("-3/4") == r);
  CHECK(Rational::parse("12") == Rational(12));
  CHECK(Rational::parse("0/5").str() == "0");
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK_THROWS(Rational::parse("abc"));
  CHECK_THROWS(Rational::parse(""));
}

TEST_CASE("rational field axioms on random triples") {
  testing::Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    Rational a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + (-a)).is_zero());
    if (!a.is_zero()) CHECK(a * a.inverse() == Rational(1));
  }
}

TEST_CASE("padic valuation of rationals") {
  CHECK(padic_valuation(Rational(12), 2) == 2);
  CHECK(padic_valuation(Rational(1, 12), 2) == -2);
  CHECK(padic_valuation(Rational(5, 9), 3) == -2);
}

TEST_CASE("prime field examples") {
  CHECK((PrimeFieldElt(5, 3) + PrimeFieldElt(5, 4)).value() == 2);
  // exhaustive search for the inverse of 2 in F_5
  std::uint32_t found = 0;
  for (std::uint32_t x = 0; x < 5; ++x)
    if ((2 * x) % 5 == 1) found = x;
  CHECK(PrimeFieldElt(5, 2).inverse().value() == found);
  CHECK(found == 3);
  for (std::uint32_t p : {2u, 3u, 5u, 7u})
    for (std::uint32_t a = 0; a < p; ++a) CHECK(PrimeFieldElt(p, a).pow(p) == PrimeFieldElt(p, a));
  CHECK_THROWS_AS(PrimeFieldElt(5, 0).inverse(), DivisionByZero);
  CHECK_THROWS_AS(PrimeFieldElt(3, 1) + PrimeFieldElt(5, 1), DomainMismatch);
  CHECK_THROWS(PrimeFieldElt(6, 1));
  CHECK(PrimeFieldElt(7, -1).value() == 6);
}

TEST_CASE("Frobenius additivity in F_p, exhaustive") {
  for (std::uint32_t p : {2u, 3u, 5u})
    for (std::uint32_t a = 0; a < p; ++a)
      for (std::uint32_t b = 0; b < p; ++b) {
        PrimeFieldElt x(p, a), y(p, b);
        CHECK((x + y).pow(p) == x.pow(p) + y.pow(p));
      }
}

TEST_CASE("prime checks") {
  CHECK(is_prime(2));
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK_THROWS(checked_prime(4));
}
