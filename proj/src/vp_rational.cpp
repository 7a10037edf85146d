#include "defekt/vp_rational.hpp"

#include "defekt/errors.hpp"
#include "defekt/prime_field.hpp"

namespace defekt {

namespace {

void require_same(const VpRational& a, const VpRational& b) {
  if (a.prime() != b.prime()) throw DomainMismatch("v_p prime mismatch");
}

}  // namespace

VpRational::VpRational(std::uint32_t p, Rational value) : p_(checked_prime(p)), value_(std::move(value)) {}

Valuation VpRational::valuation() const {
  if (value_.is_zero()) return Valuation::infinite();
  return Valuation::exact(Rational(padic_valuation(value_, p_)));
}

VpRational operator+(const VpRational& a, const VpRational& b) {
  require_same(a, b);
  return {a.p_, a.value_ + b.value_};
}

VpRational operator-(const VpRational& a, const VpRational& b) {
  require_same(a, b);
  return {a.p_, a.value_ - b.value_};
}

VpRational operator*(const VpRational& a, const VpRational& b) {
  require_same(a, b);
  return {a.p_, a.value_ * b.value_};
}

VpRational VpRational::pow(unsigned long n) const {
  Rational r(1);
  for (unsigned long i = 0; i < n; ++i) r *= value_;
  return {p_, r};
}

VpRational VpRational::inverse(const Rational&) const { return {p_, value_.inverse()}; }

}  // namespace defekt
