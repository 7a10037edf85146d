#include <doctest.h>

#include <map>

#include "defekt/errors.hpp"
#include "defekt/hahn.hpp"
#include "support/generators.hpp"

using namespace defekt;

namespace {

Rational pw(long p, long k) { return Rational(ipow(BigInt(p), static_cast<unsigned long>(k))); }

// theta_k = sum_{i=1..k} t^(-1/p^i)
HahnSeries theta(std::uint32_t p, int k) {
  std::vector<HahnSeries::Term> terms;
  for (int i = 1; i <= k; ++i) terms.push_back({-pw(p, i).inverse(), 1});
  return HahnSeries(p, terms);
}

// Term-merge oracle: coefficientwise sum in a map.
HahnSeries merge_oracle(std::uint32_t p, const std::vector<HahnSeries::Term>& a,
                        const std::vector<HahnSeries::Term>& b) {
  std::map<Rational, std::uint32_t> acc;
  for (const auto* side : {&a, &b})
    for (const auto& t : *side) acc[t.exponent] = (acc[t.exponent] + t.coeff) % p;
  std::vector<HahnSeries::Term> out;
  for (const auto& [e, c] : acc)
    if (c != 0) out.push_back({e, c});
  return HahnSeries(p, out);
}

// Long division of 1 by (1 + t) over F_p: quotient digits to degree n-1.
std::vector<std::uint32_t> long_division_inverse(std::uint32_t p, int n) {
  std::vector<std::uint32_t> rem(std::size_t(n + 1), 0), q(std::size_t(n), 0);
  rem[0] = 1;
  for (int i = 0; i < n; ++i) {
    q[std::size_t(i)] = rem[std::size_t(i)];
    rem[std::size_t(i + 1)] = (rem[std::size_t(i + 1)] + p - q[std::size_t(i)]) % p;
    rem[std::size_t(i)] = 0;
  }
  return q;
}

}  // namespace

TEST_CASE("hahn valuation") {
  CHECK(HahnSeries::monomial(2, 1, 1).valuation() == Valuation::exact(1));
  CHECK(theta(2, 5).valuation() == Valuation::exact(Rational(-1, 2)));
  CHECK(HahnSeries::zero(2).valuation() == Valuation::infinite());
  CHECK(HahnSeries::zero_to(2, 3).valuation() == Valuation::at_least(3));
}

TEST_CASE("hahn addition") {
  auto t = HahnSeries::monomial(3, 1, 1);
  CHECK((t + (-t)).is_exact_zero());
  auto one_t = HahnSeries::one(2) + HahnSeries::monomial(2, 1, 1);
  CHECK((one_t + one_t).is_exact_zero());

  auto a = theta(2, 3);
  auto b = HahnSeries::monomial(2, 1, Rational(-1, 2));
  auto sum = a + b;
  CHECK(sum == merge_oracle(2, a.terms(), b.terms()));
  CHECK(sum == HahnSeries(2, {{Rational(-1, 4), 1}, {Rational(-1, 8), 1}}));

  auto capped = HahnSeries(5, {{0, 1}, {2, 3}}, Rational(3)) + HahnSeries(5, {{1, 1}}, Rational(2));
  CHECK(capped.precision() == Rational(2));
  CHECK(capped.terms().size() == 2);
  CHECK_THROWS_AS(HahnSeries::one(2) + HahnSeries::one(3), DomainMismatch);
}

TEST_CASE("hahn multiplication") {
  auto t = HahnSeries::monomial(5, 1, 1);
  CHECK(t * t == HahnSeries::monomial(5, 1, 2));
  for (int k = 1; k <= 5; ++k) {
    std::vector<HahnSeries::Term> doubled;
    for (int i = 1; i <= k; ++i) doubled.push_back({-pw(2, i - 1).inverse(), 1});
    CHECK(theta(2, k) * theta(2, k) == HahnSeries(2, doubled));
  }

  // (1 + t) * inv(1 + t) against the truncated geometric series 1 - t + t^2 - ...
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto u = HahnSeries::one(p) + HahnSeries::monomial(p, 1, 1);
    auto inv = u.inverse(6);
    std::vector<HahnSeries::Term> geo;
    for (int i = 0; i < 6; ++i) geo.push_back({i, i % 2 == 0 ? 1u : p - 1});
    CHECK(inv == HahnSeries(p, geo, Rational(6)));
    auto prod = u * inv;
    CHECK(prod.agrees_with(HahnSeries::one(p)));
    CHECK(prod.precision() == Rational(6));
  }

  auto fuzzy_zero = HahnSeries::zero_to(3, 2);
  CHECK_THROWS_AS(fuzzy_zero * HahnSeries(3, {{0, 1}}, Rational(4)), PrecisionError);
  auto ok = fuzzy_zero * HahnSeries::monomial(3, 1, 1);
  CHECK(ok.is_zero());
  CHECK(ok.precision() == Rational(3));
}

TEST_CASE("hahn inverse") {
  CHECK(HahnSeries::monomial(2, 1, 1).inverse(10) == HahnSeries::monomial(2, 1, -1));
  auto back = HahnSeries::monomial(2, 1, -1).inverse(10);
  CHECK(back == HahnSeries::monomial(2, 1, 1));
  CHECK(back.valuation() == Valuation::exact(1));

  auto u = HahnSeries::one(3) + HahnSeries::monomial(3, 1, 1);
  auto inv = u.inverse(4);
  auto digits = long_division_inverse(3, 4);
  std::vector<HahnSeries::Term> expected;
  for (int i = 0; i < 4; ++i)
    if (digits[std::size_t(i)] != 0) expected.push_back({i, digits[std::size_t(i)]});
  CHECK(inv == HahnSeries(3, expected, Rational(4)));
  CHECK(inv.str() == "1 + 2*t + t^2 + 2*t^3 + O(t^4)");

  CHECK_THROWS_AS(HahnSeries::zero(3).inverse(4), DivisionByZero);
  CHECK_THROWS_AS(HahnSeries::zero_to(3, 2).inverse(4), PrecisionError);
}

TEST_CASE("frobenius and pth root") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    CHECK(HahnSeries::monomial(p, 1, -Rational(p).inverse()).frobenius() == HahnSeries::monomial(p, 1, -1));
    for (int k = 1; k <= 6; ++k) {
      auto th = theta(p, k);
      auto residual = th.frobenius() - th - HahnSeries::monomial(p, 1, -1);
      // telescoping: sum_{i=0}^{k-1} t^(-1/p^i) - sum_{i=1}^{k} t^(-1/p^i) - t^-1
      CHECK(residual == HahnSeries::monomial(p, -1, -pw(p, k).inverse()));
      CHECK(th.pow(p) == th.frobenius());
    }
  }
  testing::Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    std::uint32_t p = std::array<std::uint32_t, 3>{2, 3, 5}[std::size_t(rng.uniform(0, 2))];
    auto a = testing::random_series(rng, p);
    auto b = testing::random_series(rng, p);
    CHECK(a.frobenius().pth_root() == a);
    CHECK(a.pth_root().frobenius() == a);
    CHECK((a + b).frobenius() == a.frobenius() + b.frobenius());
    CHECK((a * b).frobenius() == a.frobenius() * b.frobenius());
  }
  auto capped = HahnSeries(3, {{0, 1}}, Rational(2));
  CHECK(capped.frobenius().precision() == Rational(6));
  CHECK(capped.pth_root().precision() == Rational(2, 3));
}

TEST_CASE("truncate") {
  auto f = HahnSeries(2, {{0, 1}, {1, 1}, {2, 1}});
  auto g = f.truncate(2);
  CHECK(g == HahnSeries(2, {{0, 1}, {1, 1}}, Rational(2)));
  auto z = HahnSeries::zero(2).truncate(5);
  CHECK(z.is_zero());
  CHECK_FALSE(z.is_exact());
  CHECK(z.precision() == Rational(5));
  CHECK(HahnSeries(2, {{3, 1}, {5, 1}}).truncate(4).valuation() == Valuation::exact(3));
  CHECK_THROWS(g.truncate(3));
}

TEST_CASE("hahn valuation laws and ring axioms on random series") {
  testing::Rng rng(2024);
  const Rational cap(6);
  int trials = 0;
  for (std::uint32_t p : {2u, 3u, 5u})
    for (int i = 0; i < 1000; ++i) {
      auto a = testing::random_series(rng, p).capped(cap);
      auto b = testing::random_series(rng, p).capped(cap);
      auto c = testing::random_series(rng, p).capped(cap);
      if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
      ++trials;
      CHECK(((a + b) + c).agrees_with(a + (b + c)));
      CHECK((a * b).agrees_with(b * a));
      CHECK(((a * b) * c).agrees_with(a * (b * c)));
      if (!(b + c).is_zero()) CHECK((a * (b + c)).agrees_with(a * b + a * c));
      CHECK((a * b).valuation().value() == a.valuation().value() + b.valuation().value());
      auto s = a + b;
      if (!s.is_zero() && s.valuation().is_exact()) {
        CHECK(s.valuation().value() >= min(a.valuation().value(), b.valuation().value()));
        if (a.valuation().value() != b.valuation().value())
          CHECK(s.valuation().value() == min(a.valuation().value(), b.valuation().value()));
      }
      const HahnSeries ab = a * b;
      for (const auto& term : ab.terms()) CHECK(term.exponent < *ab.precision());
    }
  CHECK(trials > 2500);
}

TEST_CASE("hahn text form") {
  CHECK(HahnSeries::zero(2).str() == "0");
  CHECK(HahnSeries::zero_to(2, 3).str() == "O(t^3)");
  CHECK(HahnSeries(5, {{Rational(-1, 4), 1}, {Rational(1, 3), 2}}, Rational(2)).str() ==
        "t^(-1/4) + 2*t^(1/3) + O(t^2)");
}
