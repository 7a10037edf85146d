#pragma once

#include <optional>
#include <string>

#include "defekt/rational.hpp"

namespace defekt {

// Value of an element whose expansion may only be known up to a precision
// cap: either an exact value, a lower bound (the element is zero below the
// cap), or +infinity for the exact zero.
class Valuation {
 public:
  enum class Kind { Exact, AtLeast, Infinite };

  static Valuation exact(Rational v) { return Valuation(Kind::Exact, std::move(v)); }
  static Valuation at_least(Rational bound) { return Valuation(Kind::AtLeast, std::move(bound)); }
  static Valuation infinite() { return Valuation(Kind::Infinite, Rational()); }

  Kind kind() const { return kind_; }
  bool is_exact() const { return kind_ == Kind::Exact; }
  bool is_infinite() const { return kind_ == Kind::Infinite; }
  bool is_at_least() const { return kind_ == Kind::AtLeast; }

  // The exact value or the lower bound; throws for Infinite.
  const Rational& value() const;

  // True when the valuation is certainly >= bound.
  bool certainly_at_least(const Rational& bound) const;
  // True when the valuation is certainly > bound.
  bool certainly_greater(const Rational& bound) const;

  // "v", ">= v" or "inf".
  std::string str() const;

  friend bool operator==(const Valuation&, const Valuation&) = default;

 private:
  Valuation(Kind k, Rational v) : kind_(k), value_(std::move(v)) {}
  Kind kind_;
  Rational value_;
};

// Minimum of two valuations in the ultrametric sense, used when the two
// values come from terms that cannot cancel each other.
Valuation min_noncancelling(const Valuation& a, const Valuation& b);

}  // namespace defekt
