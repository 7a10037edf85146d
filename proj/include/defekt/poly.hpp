#pragma once

#include <cmath>
#include <concepts>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "defekt/errors.hpp"
#include "defekt/newton_polygon.hpp"
#include "defekt/rational.hpp"
#include "defekt/valuation.hpp"
#include "defekt/vp_rational.hpp"

namespace defekt {

// Coefficient domains of ValuedPoly: HahnSeries, RamifiedPadic, VpRational
// and TowerElement.
template <class C>
concept ValuedCoefficient = requires(const C& a, const C& b, unsigned long n, const Rational& prec) {
  { a + b } -> std::convertible_to<C>;
  { a - b } -> std::convertible_to<C>;
  { a * b } -> std::convertible_to<C>;
  { -a } -> std::convertible_to<C>;
  { a.valuation() } -> std::same_as<Valuation>;
  { a.is_exact_zero() } -> std::convertible_to<bool>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a.zero_like() } -> std::convertible_to<C>;
  { a.one_like() } -> std::convertible_to<C>;
  { a.pow(n) } -> std::convertible_to<C>;
  { a.inverse(prec) } -> std::convertible_to<C>;
  { a.str() } -> std::convertible_to<std::string>;
};

namespace detail {

// n * c by double-and-add, so that characteristic p reduces correctly.
template <class C>
C times(const C& c, long n) {
  C acc = c.zero_like();
  C base = n < 0 ? -c : c;
  unsigned long k = static_cast<unsigned long>(n < 0 ? -n : n);
  while (k > 0) {
    if (k & 1) acc = acc + base;
    k >>= 1;
    if (k > 0) base = base + base;
  }
  return acc;
}

template <class C>
std::optional<Rational> precision_of(const C& x) {
  if constexpr (requires { x.precision(); }) {
    return std::optional<Rational>(x.precision());
  } else {
    return std::nullopt;
  }
}

template <class C>
C capped(const C& x, const Rational& cap) {
  if constexpr (requires { x.capped(cap); }) {
    return x.capped(cap);
  } else {
    return x;
  }
}

template <class C>
C reanchored(const C& x, const Rational& prec) {
  if constexpr (requires { x.reanchored(prec); }) {
    return x.reanchored(prec);
  } else {
    return capped(x, prec);
  }
}

}  // namespace detail

// Polynomial with coefficients in a valued domain, stored sparsely: absent
// degrees are exact zeros, present ones may still be zero below a precision
// cap (their valuation is then indeterminate).
template <ValuedCoefficient C>
class ValuedPoly {
 public:
  // The zero polynomial over the domain of `prototype`.
  explicit ValuedPoly(const C& prototype) : one_(prototype.one_like()) {}

  // coeffs[i] is the coefficient of X^i; exact zeros are dropped.
  explicit ValuedPoly(const std::vector<C>& coeffs) : one_(coeffs.at(0).one_like()) {
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (!coeffs[i].is_exact_zero()) coeffs_.emplace(long(i), coeffs[i]);
  }

  static ValuedPoly constant(const C& c) {
    ValuedPoly f(c);
    if (!c.is_exact_zero()) f.coeffs_.emplace(0, c);
    return f;
  }

  static ValuedPoly monomial(const C& c, long degree) {
    ValuedPoly f(c);
    if (!c.is_exact_zero()) f.coeffs_.emplace(degree, c);
    return f;
  }

  static ValuedPoly variable(const C& prototype) { return monomial(prototype.one_like(), 1); }

  // -1 for the zero polynomial.
  long degree() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::map<long, C>& terms() const { return coeffs_; }
  bool has_coeff(long i) const { return coeffs_.count(i) != 0; }
  C coeff(long i) const {
    auto it = coeffs_.find(i);
    return it == coeffs_.end() ? one_.zero_like() : it->second;
  }
  const C& leading() const {
    if (coeffs_.empty()) throw std::logic_error("zero polynomial has no leading coefficient");
    return coeffs_.rbegin()->second;
  }
  const C& prototype() const { return one_; }

  ValuedPoly operator-() const {
    ValuedPoly r(one_);
    for (const auto& [i, c] : coeffs_) r.coeffs_.emplace(i, -c);
    return r;
  }

  friend ValuedPoly operator+(const ValuedPoly& a, const ValuedPoly& b) {
    ValuedPoly r = a;
    for (const auto& [i, c] : b.coeffs_) r.accumulate(i, c);
    return r;
  }

  friend ValuedPoly operator-(const ValuedPoly& a, const ValuedPoly& b) { return a + (-b); }

  friend ValuedPoly operator*(const ValuedPoly& a, const ValuedPoly& b) {
    ValuedPoly r(a.one_);
    for (const auto& [i, x] : a.coeffs_)
      for (const auto& [j, y] : b.coeffs_) r.accumulate(i + j, x * y);
    return r;
  }

  ValuedPoly scaled(const C& c) const {
    ValuedPoly r(one_);
    if (c.is_exact_zero()) return r;
    for (const auto& [i, x] : coeffs_) r.accumulate(i, x * c);
    return r;
  }

  ValuedPoly pow(unsigned long n) const {
    ValuedPoly result = constant(one_);
    ValuedPoly base = *this;
    while (n > 0) {
      if (n & 1) result = result * base;
      n >>= 1;
      if (n > 0) base = base * base;
    }
    return result;
  }

  ValuedPoly derivative() const {
    ValuedPoly r(one_);
    for (const auto& [i, c] : coeffs_)
      if (i > 0) {
        C d = detail::times(c, i);
        if (!d.is_exact_zero()) r.coeffs_.emplace(i - 1, d);
      }
    return r;
  }

  // Horner evaluation; precision propagates through the coefficient domain.
  C eval(const C& x) const {
    if (coeffs_.empty()) return one_.zero_like();
    long deg = degree();
    C acc = coeffs_.rbegin()->second;
    for (long i = deg - 1; i >= 0; --i) {
      acc = acc * x;
      auto it = coeffs_.find(i);
      if (it != coeffs_.end()) acc = acc + it->second;
    }
    return acc;
  }

  // "X^3 + (2*t)*X + (t^(-1))", highest degree first.
  std::string str() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      const auto& [i, c] = *it;
      if (!out.empty()) out += " + ";
      bool unit = c == one_;
      std::string mono = i == 0 ? "" : (i == 1 ? "X" : "X^" + std::to_string(i));
      if (mono.empty())
        out += "(" + c.str() + ")";
      else if (unit)
        out += mono;
      else
        out += "(" + c.str() + ")*" + mono;
    }
    return out;
  }

  friend bool operator==(const ValuedPoly& a, const ValuedPoly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void accumulate(long i, const C& c) {
    auto it = coeffs_.find(i);
    if (it == coeffs_.end()) {
      if (!c.is_exact_zero()) coeffs_.emplace(i, c);
      return;
    }
    it->second = it->second + c;
    if (it->second.is_exact_zero()) coeffs_.erase(it);
  }

  C one_;
  std::map<long, C> coeffs_;
};

// Lower convex hull of (i, v(c_i)) over the nonzero coefficients.
template <ValuedCoefficient C>
NewtonPolygon newton_polygon(const ValuedPoly<C>& f) {
  std::vector<std::pair<long, Rational>> points;
  for (const auto& [i, c] : f.terms()) {
    Valuation v = c.valuation();
    if (v.is_infinite()) continue;
    if (!v.is_exact())
      throw PrecisionError("coefficient of X^" + std::to_string(i) + " has indeterminate valuation " + v.str());
    points.emplace_back(i, v.value());
  }
  return lower_hull(points);
}

template <class C>
struct HenselResult {
  C root;
  Valuation residual;  // v(f(root)) before the final truncation
  int iterations;
  bool classical;  // v(f(b)) > 0 and v(f'(b)) = 0
};

// Newton iteration x <- x - f(x)/f'(x) from b. Accepts the classical
// hypothesis v(f(b)) > 0 = v(f'(b)) and the refined v(f(b)) > 2 v(f'(b)); both
// presuppose integral coefficients and an integral start.
// The returned root is known to absolute precision target_prec and satisfies
// v(root - b) > v(f'(b)).
template <ValuedCoefficient C>
HenselResult<C> hensel_lift(const ValuedPoly<C>& f, const C& b, const Rational& target_prec) {
  const ValuedPoly<C> df = f.derivative();
  C fx = f.eval(b);
  const C dfb = df.eval(b);
  const Valuation vdf_raw = dfb.valuation();
  if (vdf_raw.is_infinite()) throw HypothesisError("f'(b) = 0: the derivative vanishes at the start point");
  if (!vdf_raw.is_exact()) throw HypothesisError("v(f'(b)) is indeterminate at this precision");
  const Rational vdf = vdf_raw.value();
  Valuation vf = fx.valuation();
  const bool classical = vf.certainly_greater(Rational(0)) && vdf.is_zero();
  if (!vf.certainly_greater(vdf * Rational(2)))
    throw HypothesisError("Hensel hypothesis fails: v(f(b)) = " + vf.str() + " is not > 2 v(f'(b)) = " +
                          (vdf * Rational(2)).str());

  // v(root - x) = v(f(x)) - v(f'(b)); done once that reaches target_prec
  const Rational needed = target_prec + vdf;
  int max_iters = 2;
  if (vf.is_exact()) {
    Rational gain = vf.value() - vdf * Rational(2);
    Rational ratio = (target_prec - vdf) / gain;
    if (ratio > Rational(1))
      max_iters += int(std::ceil(std::log2(double(ratio.num().get_d() / ratio.den().get_d()))));
  }

  // Iterates are carried to absolute precision cap. Horner then knows f(x) to
  // cap + m, where m = min_{i>=1} v(c_i) + (i-1) v(x) <= v(f'(x)).
  // v(x) >= min(v(b), v(f(b)) - v(f'(b))) along the iteration.
  Rational m = vdf;
  {
    std::optional<Rational> vx_low;
    if (vf.is_exact()) vx_low = vf.value() - vdf;
    const Valuation vb = b.valuation();
    if (!vb.is_infinite()) vx_low = vx_low ? std::min(*vx_low, vb.value()) : vb.value();
    for (const auto& [i, c] : f.terms()) {
      const Valuation vc = c.valuation();
      if (i == 0 || vc.is_infinite()) continue;
      if (i > 1 && !vx_low) continue;
      Rational term = vc.value();
      if (i > 1) term += Rational(i - 1) * *vx_low;
      m = std::min(m, term);
    }
  }
  const Rational cap = target_prec + vdf - m + Rational(1);

  C x = b;
  int iter = 0;
  while (!vf.certainly_at_least(needed)) {
    if (iter == max_iters || !vf.is_exact())
      throw PrecisionError("Hensel lifting stagnated: root known to precision " + (vf.value() - vdf).str() +
                           ", target " + target_prec.str());
    const C dfx = df.eval(x);
    const Valuation vdfx = dfx.valuation();
    if (!vdfx.is_exact() || vdfx.value() != vdf)
      throw PrecisionError("v(f'(x)) changed during lifting: " + vdfx.str());
    x = x - fx * dfx.inverse(cap - vf.value());
    x = detail::reanchored(x, cap);
    fx = f.eval(x);
    Valuation next = fx.valuation();
    if (!next.certainly_greater(vf.value()))
      throw PrecisionError("Hensel lifting stagnated: v(f(x)) did not increase beyond " + vf.value().str());
    vf = next;
    ++iter;
  }
  auto xprec = detail::precision_of(x);
  if (xprec && *xprec < target_prec)
    throw PrecisionError("root only known to precision " + xprec->str() + ", target " + target_prec.str());
  return {detail::capped(x, target_prec), vf, iter, classical};
}

// Characteristic-p translation: if theta is a root of X^p - X - a, then
// theta - c is a root of X^p - X - (a - c^p + c).
template <ValuedCoefficient C>
C as_translate(const C& a, const C& c) {
  return a - c.pow(a.characteristic()) + c;
}

// b^(-n) f(bX) for monic f of degree n: X^p - b^(p-1)X - a becomes
// X^p - X - a/b^p, and theta is a root of f iff theta/b is a root of the result.
template <ValuedCoefficient C>
ValuedPoly<C> as_scale(const ValuedPoly<C>& f, const C& b, const Rational& out_prec) {
  const long n = f.degree();
  if (n < 1) throw std::invalid_argument("as_scale needs a polynomial of degree >= 1");
  if (!(f.leading() == f.prototype())) throw std::invalid_argument("as_scale needs a monic polynomial");
  if (!b.valuation().is_exact())
    throw PrecisionError("scaling element must have an exact valuation, got " + b.valuation().str());
  const C b_inv = b.inverse(out_prec);
  ValuedPoly<C> g(f.prototype());
  for (const auto& [i, c] : f.terms()) {
    if (i == n) {
      g = g + ValuedPoly<C>::monomial(c, i);
    } else {
      g = g + ValuedPoly<C>::monomial(c * b_inv.pow(static_cast<unsigned long>(n - i)), i);
    }
  }
  return g;
}

// (1/divisor) f(alpha + beta X) over Q with the v_p valuation. The divisor
// must divide the leading coefficient of f(alpha + beta X) to an integer.
ValuedPoly<VpRational> subst_affine(const ValuedPoly<VpRational>& f, const Rational& alpha, const Rational& beta,
                                    const Rational& divisor);

}  // namespace defekt
