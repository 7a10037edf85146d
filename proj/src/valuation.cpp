#include "defekt/valuation.hpp"

#include <stdexcept>

namespace defekt {

const Rational& Valuation::value() const {
  if (kind_ == Kind::Infinite) throw std::logic_error("infinite valuation has no finite value");
  return value_;
}

bool Valuation::certainly_at_least(const Rational& bound) const {
  return kind_ == Kind::Infinite || value_ >= bound;
}

bool Valuation::certainly_greater(const Rational& bound) const {
  return kind_ == Kind::Infinite || value_ > bound;
}

std::string Valuation::str() const {
  switch (kind_) {
    case Kind::Exact:
      return value_.str();
    case Kind::AtLeast:
      return ">= " + value_.str();
    case Kind::Infinite:
      break;
  }
  return "inf";
}

Valuation min_noncancelling(const Valuation& a, const Valuation& b) {
  if (a.is_infinite()) return b;
  if (b.is_infinite()) return a;
  // an exact value strictly below every bound is the true minimum
  if (a.is_exact() && b.is_exact()) return a.value() <= b.value() ? a : b;
  if (a.is_exact() && a.value() < b.value()) return a;
  if (b.is_exact() && b.value() < a.value()) return b;
  return Valuation::at_least(min(a.value(), b.value()));
}

}  // namespace defekt
