#include "defekt/prime_field.hpp"

#include <stdexcept>

#include "defekt/errors.hpp"

namespace defekt {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint32_t checked_prime(std::uint64_t p) {
  if (p > UINT32_MAX || !is_prime(p))
    throw std::invalid_argument("characteristic " + std::to_string(p) + " is not a prime");
  return std::uint32_t(p);
}

namespace fp {

std::uint32_t inv(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw DivisionByZero();
  // extended Euclid on signed 64-bit values
  std::int64_t r0 = p, r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  std::int64_t x = s0 % std::int64_t(p);
  if (x < 0) x += p;
  return std::uint32_t(x);
}

std::uint32_t reduce(const BigInt& n, std::uint32_t p) {
  BigInt r;
  mpz_fdiv_r_ui(r.get_mpz_t(), n.get_mpz_t(), p);
  return std::uint32_t(r.get_ui());
}

}  // namespace fp

PrimeFieldElt::PrimeFieldElt(std::uint32_t p, std::int64_t value) : p_(checked_prime(p)) {
  std::int64_t r = value % std::int64_t(p);
  if (r < 0) r += p;
  v_ = std::uint32_t(r);
}

PrimeFieldElt::PrimeFieldElt(std::uint32_t p, const BigInt& value)
    : p_(checked_prime(p)), v_(fp::reduce(value, p)) {}

PrimeFieldElt PrimeFieldElt::from_rational(std::uint32_t p, const Rational& q) {
  PrimeFieldElt num(p, q.num());
  PrimeFieldElt den(p, q.den());
  return num * den.inverse();
}

void PrimeFieldElt::require_same(const PrimeFieldElt& o) const {
  if (p_ != o.p_)
    throw DomainMismatch("characteristic mismatch: F_" + std::to_string(p_) + " vs F_" +
                         std::to_string(o.p_));
}

PrimeFieldElt PrimeFieldElt::operator+(const PrimeFieldElt& o) const {
  require_same(o);
  return {Unchecked{}, p_, fp::add(v_, o.v_, p_)};
}

PrimeFieldElt PrimeFieldElt::operator-(const PrimeFieldElt& o) const {
  require_same(o);
  return {Unchecked{}, p_, fp::sub(v_, o.v_, p_)};
}

PrimeFieldElt PrimeFieldElt::operator*(const PrimeFieldElt& o) const {
  require_same(o);
  return {Unchecked{}, p_, fp::mul(v_, o.v_, p_)};
}

PrimeFieldElt PrimeFieldElt::operator-() const { return {Unchecked{}, p_, fp::neg(v_, p_)}; }

PrimeFieldElt PrimeFieldElt::inverse() const { return {Unchecked{}, p_, fp::inv(v_, p_)}; }

PrimeFieldElt PrimeFieldElt::pow(const BigInt& exponent) const {
  BigInt e = exponent;
  std::uint32_t base = v_;
  if (e < 0) {
    base = fp::inv(base, p_);
    e = -e;
  }
  BigInt r;
  BigInt b(base), m(p_);
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return {Unchecked{}, p_, std::uint32_t(r.get_ui())};
}

}  // namespace defekt
