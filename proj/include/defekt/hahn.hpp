#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "defekt/prime_field.hpp"
#include "defekt/rational.hpp"
#include "defekt/valuation.hpp"

namespace defekt {

// Truncated generalized power series  sum c_g t^g  over F_p with rational
// exponents. The support is a finite ascending list of exponents below a
// precision cap; a missing cap (nullopt) means the series is exact.
//
// Precision calculus (absolute precision P, valuation v):
//   a + b : P = min(P_a, P_b)
//   a * b : P = min(v_a + P_b, v_b + P_a)
// A product involving a factor that is zero below a finite cap is only
// defined when the other factor is exact; otherwise PrecisionError.
class HahnSeries {
 public:
  struct Term {
    Rational exponent;
    std::uint32_t coeff;  // in [1, p)
    friend bool operator==(const Term&, const Term&) = default;
  };

  // Normalizes: sorts, merges equal exponents, drops zero coefficients and
  // every term at or beyond the precision cap.
  HahnSeries(std::uint32_t p, std::vector<Term> terms, std::optional<Rational> precision = std::nullopt);

  static HahnSeries zero(std::uint32_t p);
  static HahnSeries zero_to(std::uint32_t p, Rational precision);
  static HahnSeries one(std::uint32_t p);
  static HahnSeries constant(const PrimeFieldElt& c);
  // Image of a p-integral rational in F_p, as a constant series.
  static HahnSeries constant(std::uint32_t p, const Rational& q);
  static HahnSeries monomial(std::uint32_t p, std::int64_t coeff, Rational exponent);

  std::uint32_t characteristic() const { return p_; }
  const std::vector<Term>& terms() const { return terms_; }
  const std::optional<Rational>& precision() const { return precision_; }

  bool is_exact() const { return !precision_.has_value(); }
  bool is_exact_zero() const { return terms_.empty() && is_exact(); }
  // No term below the cap (exact zero or zero-to-precision).
  bool is_zero() const { return terms_.empty(); }

  Valuation valuation() const;
  PrimeFieldElt coefficient(const Rational& exponent) const;

  HahnSeries operator-() const;
  HahnSeries& operator+=(const HahnSeries& o);
  HahnSeries& operator-=(const HahnSeries& o);
  HahnSeries& operator*=(const HahnSeries& o);
  friend HahnSeries operator+(HahnSeries a, const HahnSeries& b) { return a += b; }
  friend HahnSeries operator-(HahnSeries a, const HahnSeries& b) { return a -= b; }
  friend HahnSeries operator*(HahnSeries a, const HahnSeries& b) { return a *= b; }

  // Multiplicative inverse with absolute precision at most out_prec: the
  // leading term is factored out and the geometric series of the tail is
  // summed. A monomial of an exact series inverts exactly.
  HahnSeries inverse(const Rational& out_prec) const;
  HahnSeries pow(unsigned long n) const;

  // sum c t^g -> sum c t^(pg); exact inverse of pth_root.
  HahnSeries frobenius() const;
  HahnSeries pth_root() const;

  // Drops every term >= new_prec. Raising the precision is an error.
  HahnSeries truncate(const Rational& new_prec) const;
  // Like truncate, but a cap above the current precision is a no-op.
  HahnSeries capped(const Rational& cap) const;
  // The known terms below prec, read as an exact element. Newton iterates
  // are candidates, not measurements.
  HahnSeries reanchored(const Rational& prec) const;
  // Multiplies by t^shift.
  HahnSeries shifted(const Rational& shift) const;

  // Equality up to the smaller of the two precisions.
  bool agrees_with(const HahnSeries& o) const;

  HahnSeries zero_like() const { return zero(p_); }
  HahnSeries one_like() const { return one(p_); }

  // "t^(-1/4) + 2*t^(1/3) + O(t^2)"; "0" for the exact zero.
  std::string str() const;

  friend bool operator==(const HahnSeries&, const HahnSeries&) = default;

 private:
  explicit HahnSeries(std::uint32_t p) : p_(p) {}
  void require_same(const HahnSeries& o) const;
  void apply_cap();

  std::uint32_t p_;
  std::vector<Term> terms_;
  std::optional<Rational> precision_;
};

// "t", "t^3", "t^(-1/2)" and "1" for exponent zero.
std::string render_power(const std::string& var, const Rational& exponent);

}  // namespace defekt
