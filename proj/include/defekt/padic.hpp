#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "defekt/rational.hpp"
#include "defekt/valuation.hpp"

namespace defekt {

// Element of the totally ramified extension Q_p(p^(1/p^k)), written as a
// base-p digit expansion  sum d_a p^a  with exponents a in (1/p^k)Z and
// digits d_a in [1, p). Since p^(1/p^k) is itself a power of p, p copies of
// p^a carry to a single p^(a+1) and no minimal polynomial reduction is
// needed. Elements always carry a finite absolute precision.
class RamifiedPadic {
 public:
  struct Digit {
    Rational exponent;
    std::uint32_t digit;  // in [1, p)
    friend bool operator==(const Digit&, const Digit&) = default;
  };

  static constexpr long kDefaultPrecision = 2;

  static RamifiedPadic zero_to(std::uint32_t p, Rational precision);
  static RamifiedPadic from_integer(std::uint32_t p, const BigInt& n, Rational precision);
  static RamifiedPadic from_rational(std::uint32_t p, const Rational& q, Rational precision);
  // digit * p^exponent; the exponent's denominator must be a power of p.
  static RamifiedPadic monomial(std::uint32_t p, std::int64_t digit, const Rational& exponent,
                                Rational precision);

  std::uint32_t characteristic() const { return p_; }
  unsigned depth() const { return depth_; }
  const std::vector<Digit>& digits() const { return digits_; }
  const Rational& precision() const { return precision_; }

  bool is_exact_zero() const { return false; }
  bool is_zero() const { return digits_.empty(); }
  Valuation valuation() const;

  RamifiedPadic operator-() const;
  friend RamifiedPadic operator+(const RamifiedPadic& a, const RamifiedPadic& b);
  friend RamifiedPadic operator-(const RamifiedPadic& a, const RamifiedPadic& b);
  friend RamifiedPadic operator*(const RamifiedPadic& a, const RamifiedPadic& b);
  RamifiedPadic& operator+=(const RamifiedPadic& o) { return *this = *this + o; }
  RamifiedPadic& operator-=(const RamifiedPadic& o) { return *this = *this - o; }
  RamifiedPadic& operator*=(const RamifiedPadic& o) { return *this = *this * o; }

  RamifiedPadic pow(unsigned long n) const;
  // Newton iteration x <- x(2 - ux) on the unit part.
  RamifiedPadic inverse(const Rational& out_prec) const;

  RamifiedPadic capped(const Rational& cap) const;
  bool agrees_with(const RamifiedPadic& o) const;
  // Known digits below prec, read as exact and given precision prec.
  RamifiedPadic reanchored(const Rational& prec) const;

  RamifiedPadic zero_like() const { return zero_to(p_, precision_); }
  RamifiedPadic one_like() const { return from_integer(p_, 1, precision_); }

  // "1*p^(-1/3) + 2*p^(0) + O(p^(2))"
  std::string str() const;

  friend bool operator==(const RamifiedPadic&, const RamifiedPadic&) = default;

 private:
  RamifiedPadic(std::uint32_t p, unsigned depth, Rational precision)
      : p_(p), depth_(depth), precision_(std::move(precision)) {}

  std::uint32_t p_;
  unsigned depth_;
  std::vector<Digit> digits_;
  Rational precision_;

  friend class PadicAccumulator;
};

// Smallest k with q in (1/p^k)Z; throws if q's denominator is not a p-power.
unsigned exponent_depth(const Rational& q, std::uint32_t p);

struct QuasiAdditivityReport {
  bool holds;
  Valuation witness;  // valuation of (sum c_i)^p - sum c_i^p
};

// Requires v(c_i) >= -1/p for every c_i and checks
// that (sum c_i)^p - sum c_i^p lies in the valuation ring.
QuasiAdditivityReport quasi_additivity_check(const std::vector<RamifiedPadic>& c);

struct TowerResidualReport {
  Rational valuation;  // v(theta_k^p - theta_k - 1/p)
};

// theta_k = sum_{i<=k} p^(-1/p^i); computes v(theta_k^p - theta_k - 1/p).
// Throws PrecisionError when the working precision cannot certify it.
TowerResidualReport qp_tower_residual(std::uint32_t p, unsigned k,
                                      const Rational& precision = Rational(RamifiedPadic::kDefaultPrecision));

}  // namespace defekt
