#include "defekt/hahn.hpp"

#include <algorithm>

#include "defekt/errors.hpp"

namespace defekt {

namespace {

using Terms = std::vector<HahnSeries::Term>;

// Sorts by exponent and merges equal exponents mod p.
void canonicalize(Terms& terms, std::uint32_t p) {
  std::sort(terms.begin(), terms.end(),
            [](const HahnSeries::Term& a, const HahnSeries::Term& b) { return a.exponent < b.exponent; });
  Terms out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().exponent == t.exponent) {
      out.back().coeff = fp::add(out.back().coeff, t.coeff, p);
      if (out.back().coeff == 0) out.pop_back();
    } else if (t.coeff % p != 0) {
      out.push_back({std::move(t.exponent), t.coeff % p});
    }
  }
  terms = std::move(out);
}

std::optional<Rational> min_prec(const std::optional<Rational>& a, const std::optional<Rational>& b) {
  if (!a) return b;
  if (!b) return a;
  return min(*a, *b);
}

}  // namespace

HahnSeries::HahnSeries(std::uint32_t p, std::vector<Term> terms, std::optional<Rational> precision)
    : p_(checked_prime(p)), terms_(std::move(terms)), precision_(std::move(precision)) {
  canonicalize(terms_, p_);
  apply_cap();
}

void HahnSeries::apply_cap() {
  if (!precision_) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), *precision_,
                             [](const Term& t, const Rational& e) { return t.exponent < e; });
  terms_.erase(it, terms_.end());
}

HahnSeries HahnSeries::zero(std::uint32_t p) { return HahnSeries(checked_prime(p)); }

HahnSeries HahnSeries::zero_to(std::uint32_t p, Rational precision) {
  HahnSeries s(checked_prime(p));
  s.precision_ = std::move(precision);
  return s;
}

HahnSeries HahnSeries::one(std::uint32_t p) { return monomial(p, 1, Rational(0)); }

HahnSeries HahnSeries::constant(const PrimeFieldElt& c) {
  return monomial(c.characteristic(), c.value(), Rational(0));
}

HahnSeries HahnSeries::constant(std::uint32_t p, const Rational& q) {
  return constant(PrimeFieldElt::from_rational(p, q));
}

HahnSeries HahnSeries::monomial(std::uint32_t p, std::int64_t coeff, Rational exponent) {
  PrimeFieldElt c(p, coeff);
  HahnSeries s(c.characteristic());
  if (!c.is_zero()) s.terms_.push_back({std::move(exponent), c.value()});
  return s;
}

void HahnSeries::require_same(const HahnSeries& o) const {
  if (p_ != o.p_)
    throw DomainMismatch("characteristic mismatch: " + std::to_string(p_) + " vs " + std::to_string(o.p_));
}

Valuation HahnSeries::valuation() const {
  if (!terms_.empty()) return Valuation::exact(terms_.front().exponent);
  if (precision_) return Valuation::at_least(*precision_);
  return Valuation::infinite();
}

PrimeFieldElt HahnSeries::coefficient(const Rational& exponent) const {
  if (precision_ && exponent >= *precision_)
    throw PrecisionError("coefficient of t^" + exponent.str() + " lies beyond the precision cap");
  for (const auto& t : terms_)
    if (t.exponent == exponent) return PrimeFieldElt(p_, std::int64_t(t.coeff));
  return PrimeFieldElt(p_, std::int64_t(0));
}

HahnSeries HahnSeries::operator-() const {
  HahnSeries r = *this;
  for (auto& t : r.terms_) t.coeff = fp::neg(t.coeff, p_);
  return r;
}

HahnSeries& HahnSeries::operator+=(const HahnSeries& o) {
  require_same(o);
  Terms merged;
  merged.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin(), ae = terms_.end();
  auto b = o.terms_.begin(), be = o.terms_.end();
  while (a != ae || b != be) {
    if (b == be || (a != ae && a->exponent < b->exponent)) {
      merged.push_back(std::move(*a++));
    } else if (a == ae || b->exponent < a->exponent) {
      merged.push_back(*b++);
    } else {
      std::uint32_t c = fp::add(a->coeff, b->coeff, p_);
      if (c != 0) merged.push_back({std::move(a->exponent), c});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  precision_ = min_prec(precision_, o.precision_);
  apply_cap();
  return *this;
}

HahnSeries& HahnSeries::operator-=(const HahnSeries& o) { return *this += -o; }

HahnSeries& HahnSeries::operator*=(const HahnSeries& o) {
  require_same(o);
  if (is_exact_zero() || o.is_exact_zero()) {
    *this = zero(p_);
    return *this;
  }
  if (is_zero() || o.is_zero()) {
    const HahnSeries& empty = is_zero() ? *this : o;
    const HahnSeries& other = is_zero() ? o : *this;
    if (!other.is_exact() || other.is_zero())
      throw PrecisionError("indeterminate valuation: factor is zero to precision " +
                           empty.precision_->str());
    *this = zero_to(p_, *empty.precision_ + other.terms_.front().exponent);
    return *this;
  }
  std::optional<Rational> cap;
  if (o.precision_) cap = terms_.front().exponent + *o.precision_;
  if (precision_) cap = min_prec(cap, o.terms_.front().exponent + *precision_);

  Terms product;
  for (const auto& ta : terms_) {
    for (const auto& tb : o.terms_) {
      Rational e = ta.exponent + tb.exponent;
      if (cap && e >= *cap) break;
      product.push_back({std::move(e), fp::mul(ta.coeff, tb.coeff, p_)});
    }
  }
  canonicalize(product, p_);
  terms_ = std::move(product);
  precision_ = std::move(cap);
  return *this;
}

HahnSeries HahnSeries::inverse(const Rational& out_prec) const {
  if (is_exact_zero()) throw DivisionByZero();
  if (is_zero()) throw PrecisionError("inverse of an element that is zero to precision " + precision_->str());
  const Rational lead_exp = terms_.front().exponent;
  const std::uint32_t lead_inv = fp::inv(terms_.front().coeff, p_);

  // a = c t^g (1 + w) with v(w) > 0
  Terms tail;
  for (std::size_t i = 1; i < terms_.size(); ++i)
    tail.push_back({terms_[i].exponent - lead_exp, fp::mul(terms_[i].coeff, lead_inv, p_)});
  std::optional<Rational> tail_prec;
  if (precision_) tail_prec = *precision_ - lead_exp;
  HahnSeries neg_w = -HahnSeries(p_, std::move(tail), tail_prec);

  if (neg_w.is_exact_zero()) return monomial(p_, lead_inv, -lead_exp);

  Rational relative = out_prec + lead_exp;
  if (tail_prec) relative = min(relative, *tail_prec);

  HahnSeries sum = one(p_);
  HahnSeries power = one(p_);
  for (;;) {
    power = (power * neg_w).capped(relative);
    if (power.is_zero()) break;
    sum += power;
  }
  sum = sum.capped(relative);
  for (auto& t : sum.terms_) {
    t.exponent -= lead_exp;
    t.coeff = fp::mul(t.coeff, lead_inv, p_);
  }
  sum.precision_ = *sum.precision_ - lead_exp;
  return sum;
}

HahnSeries HahnSeries::pow(unsigned long n) const {
  if (n == 0) return one(p_);
  if (is_exact_zero()) return *this;
  if (is_zero()) return zero_to(p_, *precision_ * Rational(long(n)));
  HahnSeries result = one(p_);
  HahnSeries base = *this;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

HahnSeries HahnSeries::frobenius() const {
  HahnSeries r = *this;
  const Rational p{long(p_)};
  for (auto& t : r.terms_) t.exponent *= p;
  if (r.precision_) *r.precision_ *= p;
  return r;
}

HahnSeries HahnSeries::pth_root() const {
  HahnSeries r = *this;
  const Rational p{long(p_)};
  for (auto& t : r.terms_) t.exponent /= p;
  if (r.precision_) *r.precision_ /= p;
  return r;
}

HahnSeries HahnSeries::truncate(const Rational& new_prec) const {
  if (precision_ && new_prec > *precision_)
    throw PrecisionError("cannot raise precision from " + precision_->str() + " to " + new_prec.str());
  HahnSeries r = *this;
  r.precision_ = new_prec;
  r.apply_cap();
  return r;
}

HahnSeries HahnSeries::capped(const Rational& cap) const {
  if (precision_ && *precision_ <= cap) return *this;
  return truncate(cap);
}

HahnSeries HahnSeries::reanchored(const Rational& prec) const {
  HahnSeries r = *this;
  r.precision_.reset();
  std::erase_if(r.terms_, [&](const Term& t) { return t.exponent >= prec; });
  return r;
}

HahnSeries HahnSeries::shifted(const Rational& shift) const {
  HahnSeries r = *this;
  for (auto& t : r.terms_) t.exponent += shift;
  if (r.precision_) *r.precision_ += shift;
  return r;
}

bool HahnSeries::agrees_with(const HahnSeries& o) const {
  if (p_ != o.p_) return false;
  auto cap = min_prec(precision_, o.precision_);
  if (!cap) return terms_ == o.terms_;
  return capped(*cap).terms_ == o.capped(*cap).terms_;
}

std::string render_power(const std::string& var, const Rational& exponent) {
  if (exponent.is_zero()) return "1";
  if (exponent == Rational(1)) return var;
  if (exponent.is_integer() && exponent.sign() > 0) return var + "^" + exponent.str();
  return var + "^(" + exponent.str() + ")";
}

std::string HahnSeries::str() const {
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += " + ";
    if (t.exponent.is_zero()) {
      out += std::to_string(t.coeff);
    } else {
      if (t.coeff != 1) out += std::to_string(t.coeff) + "*";
      out += render_power("t", t.exponent);
    }
  }
  if (precision_) {
    if (!out.empty()) out += " + ";
    out += "O(" + render_power("t", *precision_) + ")";
  }
  return out.empty() ? "0" : out;
}

}  // namespace defekt
