#pragma once

#include <cstdint>
#include <string>

#include "defekt/rational.hpp"

namespace defekt {

// Trial division; primes used here are desk-scale.
bool is_prime(std::uint64_t n);

// Throws std::invalid_argument unless p is prime.
std::uint32_t checked_prime(std::uint64_t p);

// Element of the prime field F_p.
class PrimeFieldElt {
 public:
  // Reduces `value` into [0, p). Rejects composite p.
  PrimeFieldElt(std::uint32_t p, std::int64_t value);
  PrimeFieldElt(std::uint32_t p, const BigInt& value);

  // Image of a p-integral rational a/b; throws DivisionByZero if p | b.
  static PrimeFieldElt from_rational(std::uint32_t p, const Rational& q);

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t value() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  PrimeFieldElt operator+(const PrimeFieldElt& o) const;
  PrimeFieldElt operator-(const PrimeFieldElt& o) const;
  PrimeFieldElt operator*(const PrimeFieldElt& o) const;
  PrimeFieldElt operator-() const;
  PrimeFieldElt inverse() const;
  PrimeFieldElt pow(const BigInt& exponent) const;

  friend bool operator==(const PrimeFieldElt&, const PrimeFieldElt&) = default;

  std::string str() const { return std::to_string(v_); }

 private:
  struct Unchecked {};
  PrimeFieldElt(Unchecked, std::uint32_t p, std::uint32_t v) : p_(p), v_(v) {}
  void require_same(const PrimeFieldElt& o) const;

  std::uint32_t p_;
  std::uint32_t v_;
};

// Raw helpers on residues in [0, p); the caller guarantees p prime.
namespace fp {
inline std::uint32_t add(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  std::uint64_t s = std::uint64_t(a) + b;
  return std::uint32_t(s >= p ? s - p : s);
}
inline std::uint32_t sub(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return a >= b ? a - b : std::uint32_t(std::uint64_t(a) + p - b);
}
inline std::uint32_t mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return std::uint32_t(std::uint64_t(a) * b % p);
}
inline std::uint32_t neg(std::uint32_t a, std::uint32_t p) { return a == 0 ? 0 : p - a; }
std::uint32_t inv(std::uint32_t a, std::uint32_t p);
std::uint32_t reduce(const BigInt& n, std::uint32_t p);
}  // namespace fp

}  // namespace defekt
