#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "defekt/hahn.hpp"
#include "defekt/padic.hpp"
#include "defekt/rational.hpp"

namespace defekt::testing {

// Portable draws: modular reduction of raw mt19937_64 output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return lo + std::int64_t(gen_() % std::uint64_t(hi - lo + 1));
  }
  bool coin() { return gen_() & 1; }

 private:
  std::mt19937_64 gen_;
};

// Exponent n/d with d drawn from `dens` and n/d in [lo, hi].
inline Rational random_exponent(Rng& rng, const std::vector<long>& dens, long lo, long hi) {
  long d = dens[std::size_t(rng.uniform(0, std::int64_t(dens.size()) - 1))];
  return Rational(BigInt(rng.uniform(lo * d, hi * d)), BigInt(d));
}

// Nonzero exact series with up to `max_terms` terms.
inline HahnSeries random_series(Rng& rng, std::uint32_t p, int max_terms = 4,
                                const std::vector<long>& dens = {1, 2, 3, 4}, long lo = -2, long hi = 3) {
  for (;;) {
    std::vector<HahnSeries::Term> terms;
    int n = int(rng.uniform(1, max_terms));
    for (int i = 0; i < n; ++i)
      terms.push_back({random_exponent(rng, dens, lo, hi), std::uint32_t(rng.uniform(1, p - 1))});
    HahnSeries s(p, terms);
    if (!s.is_zero()) return s;
  }
}

// Nonzero element of Q_p(p^(1/p^depth)) with valuation >= min_val.
inline RamifiedPadic random_padic(Rng& rng, std::uint32_t p, unsigned depth, const Rational& min_val,
                                  const Rational& precision, int max_digits = 5) {
  long scale = 1;
  for (unsigned i = 0; i < depth; ++i) scale *= long(p);
  for (;;) {
    RamifiedPadic x = RamifiedPadic::zero_to(p, precision);
    int n = int(rng.uniform(1, max_digits));
    long lo = (min_val * Rational(scale)).ceil().get_si();
    long hi = (precision * Rational(scale)).ceil().get_si() - 1;
    for (int i = 0; i < n; ++i) {
      Rational e(BigInt(rng.uniform(lo, hi)), BigInt(scale));
      x += RamifiedPadic::monomial(p, rng.uniform(1, p - 1), e, precision);
    }
    if (!x.is_zero()) return x;
  }
}

}  // namespace defekt::testing
