#pragma once

#include <cstdint>
#include <string>

#include "defekt/rational.hpp"
#include "defekt/valuation.hpp"

namespace defekt {

// A rational number viewed through the p-adic valuation v_p (vp = 1).
// Arithmetic is exact, so valuations are never indeterminate.
class VpRational {
 public:
  VpRational(std::uint32_t p, Rational value);

  std::uint32_t prime() const { return p_; }
  const Rational& value() const { return value_; }

  bool is_exact_zero() const { return value_.is_zero(); }
  bool is_zero() const { return value_.is_zero(); }
  Valuation valuation() const;

  VpRational operator-() const { return {p_, -value_}; }
  friend VpRational operator+(const VpRational& a, const VpRational& b);
  friend VpRational operator-(const VpRational& a, const VpRational& b);
  friend VpRational operator*(const VpRational& a, const VpRational& b);
  VpRational& operator+=(const VpRational& o) { return *this = *this + o; }
  VpRational& operator-=(const VpRational& o) { return *this = *this - o; }
  VpRational& operator*=(const VpRational& o) { return *this = *this * o; }

  VpRational pow(unsigned long n) const;
  // Exact; the precision argument exists for interface parity.
  VpRational inverse(const Rational& /*out_prec*/) const;

  VpRational zero_like() const { return {p_, Rational(0)}; }
  VpRational one_like() const { return {p_, Rational(1)}; }

  std::string str() const { return value_.str(); }

  friend bool operator==(const VpRational&, const VpRational&) = default;

 private:
  std::uint32_t p_;
  Rational value_;
};

}  // namespace defekt
