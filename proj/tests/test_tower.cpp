#include <doctest.h>

#include "defekt/errors.hpp"
#include "defekt/tower.hpp"
#include "support/generators.hpp"

using namespace defekt;

namespace {

using TPoly = ValuedPoly<TowerElement>;

Rational inv_pow(long p, std::size_t k) { return Rational(ipow(BigInt(p), k)).inverse(); }

HahnSeries mono(std::uint32_t p, std::int64_t c, const Rational& e) { return HahnSeries::monomial(p, c, e); }

// Random element of the tower: sum of base coefficients times generator monomials.
TowerElement random_element(testing::Rng& rng, const Tower& tw) {
  const std::uint32_t p = tw.characteristic();
  TowerElement x = tw.zero();
  int terms = int(rng.uniform(1, 4));
  for (int i = 0; i < terms; ++i) {
    TowerElement m = tw.embed(testing::random_series(rng, p, 2, {1}, -2, 3));
    for (std::size_t lvl = 1; lvl <= tw.height(); ++lvl) m = m * tw.generator(lvl).pow(std::size_t(rng.uniform(0, p - 1)));
    x = x + m;
  }
  return x.is_zero() ? tw.one() : x;
}

TowerElement eta(const Tower& tw, std::size_t k) {
  TowerElement e = tw.zero();
  for (std::size_t i = 1; i <= k; ++i) e = e + tw.generator(i);
  return e;
}

}  // namespace

TEST_CASE("extend accepts the Artin-Schreier steps and rejects inert ones") {
  Tower base = Tower::laurent(2, Rational(12));
  TowerElement one = base.one();
  TPoly f = TPoly::monomial(one, 2) - TPoly::monomial(one, 1) - TPoly::constant(base.embed(mono(2, 1, -1)));
  Tower t1 = base.extend(f, Rational(-1, 2));
  CHECK(t1.height() == 1);
  TowerElement one1 = t1.one();
  TPoly g = TPoly::monomial(one1, 2) - TPoly::monomial(one1, 1) + TPoly::constant(t1.generator(1));
  Tower t2 = t1.extend(g, Rational(-1, 4));
  CHECK(t2.height() == 2);
  CHECK(t2.value_group_index() == 4);

  TPoly inert = TPoly::monomial(one, 2) - TPoly::monomial(one, 1) - TPoly::constant(base.embed(mono(2, 1, 1)));
  CHECK_THROWS_AS(base.extend(inert, Rational(0)), HypothesisError);
  CHECK_THROWS_AS(base.extend(f, Rational(-1, 3)), HypothesisError);
  CHECK_THROWS_AS(base.embed(mono(2, 1, Rational(1, 2))), DomainMismatch);
}

TEST_CASE("tower arithmetic examples") {
  Tower tw = build_as_tower(2, 1, Rational(12));
  TowerElement a = tw.generator(1);
  CHECK(a * a == a + tw.embed(mono(2, 1, -1)));
  for (std::uint32_t p : {2u, 3u}) {
    Tower t = build_as_tower(p, 3, Rational(12));
    for (std::size_t k = 1; k <= 3; ++k) {
      auto e = eta(t, k);
      CHECK((e + (-e)).is_exact_zero());
      CHECK(e.valuation() == Valuation::exact(-inv_pow(p, 1)));
      CHECK(t.generator(k).valuation() == Valuation::exact(-inv_pow(p, k)));
    }
    CHECK((t.one() + t.generator(1)).valuation() == Valuation::exact(-inv_pow(p, 1)));
    CHECK(t.value_group_index() == ipow(BigInt(p), 3));
  }
}

TEST_CASE("tower inverse against the conjugate formula") {
  // p = 2, a^2 = a + 1/t; the conjugate of c0 + c1 a is c0 + c1 + c1 a and the
  // norm is c0^2 + c0 c1 + c1^2 / t.
  const Rational wp(12);
  Tower tw = build_as_tower(2, 1, wp);
  testing::Rng rng(41);
  for (int i = 0; i < 100; ++i) {
    auto c0 = testing::random_series(rng, 2, 3, {1}, -2, 3);
    auto c1 = testing::random_series(rng, 2, 3, {1}, -2, 3);
    TowerElement x = tw.embed(c0) + tw.embed(c1) * tw.generator(1);
    HahnSeries norm = c0 * c0 + c0 * c1 + c1 * c1 * mono(2, 1, -1);
    HahnSeries ninv = norm.inverse(wp);
    TowerElement oracle = tw.embed(ninv * (c0 + c1)) + tw.embed(ninv * c1) * tw.generator(1);
    TowerElement inv = x.inverse();
    CHECK(inv.agrees_with(oracle));
    CHECK((x * inv).agrees_with(tw.one()));
  }
  CHECK_THROWS_AS(tw.zero().inverse(), DivisionByZero);
}

TEST_CASE("tower inverse on random elements") {
  for (std::uint32_t p : {2u, 3u}) {
    Tower tw = build_as_tower(p, 2, Rational(10));
    testing::Rng rng(p);
    for (int i = 0; i < 100; ++i) {
      TowerElement x = random_element(rng, tw);
      CHECK((x * x.inverse()).agrees_with(tw.one()));
    }
  }
}

TEST_CASE("tower valuation is multiplicative and ultrametric") {
  for (std::uint32_t p : {2u, 3u}) {
    Tower tw = build_as_tower(p, 2, Rational(10));
    testing::Rng rng(100 + p);
    for (int i = 0; i < 200; ++i) {
      TowerElement x = random_element(rng, tw), y = random_element(rng, tw);
      CHECK((x * y).valuation().value() == x.valuation().value() + y.valuation().value());
      auto s = x + y;
      if (s.valuation().is_exact()) {
        Rational m = min(x.valuation().value(), y.valuation().value());
        CHECK(s.valuation().value() >= m);
        if (x.valuation().value() != y.valuation().value()) CHECK(s.valuation().value() == m);
      }
    }
  }
}

TEST_CASE("tower ring axioms") {
  for (std::uint32_t p : {2u, 3u}) {
    Tower tw = build_as_tower(p, 2, Rational(10));
    testing::Rng rng(500 + p);
    for (int i = 0; i < 300; ++i) {
      TowerElement a = random_element(rng, tw), b = random_element(rng, tw), c = random_element(rng, tw);
      CHECK(((a + b) + c).agrees_with(a + (b + c)));
      CHECK((a * b).agrees_with(b * a));
      CHECK(((a * b) * c).agrees_with(a * (b * c)));
      CHECK((a * (b + c)).agrees_with(a * b + a * c));
    }
  }
}

TEST_CASE("Artin-Schreier tower identity") {
  for (std::uint32_t p : {2u, 3u}) {
    Tower tw = build_as_tower(p, 4, Rational(8));
    for (std::size_t k = 1; k <= 4; ++k) {
      auto r = as_tower_identity_check(tw, k);
      CHECK(r.holds);
      CHECK(r.holds_negated == (p == 2));
      CHECK(r.distance == -inv_pow(p, k + 1));
    }
  }
  Tower perturbed = build_as_tower(3, 3, Rational(8), mono(3, 2, -1));
  for (std::size_t k = 1; k <= 3; ++k) {
    auto r = as_tower_identity_check(perturbed, k);
    CHECK_FALSE(r.holds);
    CHECK_FALSE(r.holds_negated);
  }
}

TEST_CASE("pairwise distances in the tower") {
  for (std::uint32_t p : {2u, 3u}) {
    Tower tw = build_as_tower(p, 4, Rational(8));
    for (std::size_t k = 2; k <= 4; ++k)
      for (std::size_t j = 1; j < k; ++j)
        CHECK((eta(tw, k) - eta(tw, j)).valuation() == Valuation::exact(-inv_pow(p, j + 1)));
  }
}
