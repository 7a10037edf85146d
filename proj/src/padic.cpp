#include "defekt/padic.hpp"

#include <map>

#include "defekt/errors.hpp"
#include "defekt/prime_field.hpp"

namespace defekt {

unsigned exponent_depth(const Rational& q, std::uint32_t p) {
  BigInt den = q.den();
  unsigned k = 0;
  while (den != 1) {
    if (!mpz_divisible_ui_p(den.get_mpz_t(), p))
      throw std::invalid_argument("exponent " + q.str() + " is not in Z[1/" + std::to_string(p) + "]");
    den /= p;
    ++k;
  }
  return k;
}

// Collects integer multiples of p^(key/S), S = p^depth, and resolves carries
// into a canonical digit list. Carries only move upward, so resolving in
// ascending key order reaches the unique base-p expansion.
class PadicAccumulator {
 public:
  PadicAccumulator(std::uint32_t p, unsigned depth, Rational precision)
      : p_(p), depth_(depth), scale_(ipow(BigInt(p), depth)), precision_(std::move(precision)) {
    limit_ = (precision_ * Rational(scale_)).ceil();
  }

  BigInt key(const Rational& exponent) const {
    Rational k = exponent * Rational(scale_);
    return k.num();  // integral since depth covers the exponent
  }

  void add(const BigInt& key, const BigInt& amount) {
    if (key >= limit_ || amount == 0) return;
    acc_[key] += amount;
  }

  void add_element(const RamifiedPadic& a, long sign) {
    for (const auto& d : a.digits_) add(key(d.exponent), BigInt(long(d.digit) * sign));
  }

  RamifiedPadic finish() {
    RamifiedPadic out(p_, depth_, precision_);
    while (!acc_.empty()) {
      auto it = acc_.begin();
      BigInt k = it->first;
      BigInt c = it->second;
      acc_.erase(it);
      if (k >= limit_) break;
      BigInt d;
      mpz_fdiv_r_ui(d.get_mpz_t(), c.get_mpz_t(), p_);
      BigInt carry = (c - d) / p_;
      if (d != 0) out.digits_.push_back({Rational(k, scale_), std::uint32_t(d.get_ui())});
      if (carry != 0) add(k + scale_, carry);
    }
    return out;
  }

 private:
  std::uint32_t p_;
  unsigned depth_;
  BigInt scale_;
  Rational precision_;
  BigInt limit_;
  std::map<BigInt, BigInt> acc_;
};

namespace {

void require_same(const RamifiedPadic& a, const RamifiedPadic& b) {
  if (a.characteristic() != b.characteristic())
    throw DomainMismatch("residue characteristic mismatch: " + std::to_string(a.characteristic()) + " vs " +
                         std::to_string(b.characteristic()));
}

}  // namespace

RamifiedPadic RamifiedPadic::zero_to(std::uint32_t p, Rational precision) {
  return RamifiedPadic(checked_prime(p), 0, std::move(precision));
}

RamifiedPadic RamifiedPadic::from_integer(std::uint32_t p, const BigInt& n, Rational precision) {
  PadicAccumulator acc(checked_prime(p), 0, std::move(precision));
  acc.add(0, n);
  return acc.finish();
}

RamifiedPadic RamifiedPadic::from_rational(std::uint32_t p, const Rational& q, Rational precision) {
  checked_prime(p);
  if (q.is_zero()) return zero_to(p, std::move(precision));
  long v = padic_valuation(q, p);
  Rational unit = q / (v >= 0 ? Rational(ipow(BigInt(p), v)) : Rational(ipow(BigInt(p), -v)).inverse());
  // digits needed below the cap, counted from exponent v
  BigInt needed = (precision - Rational(v)).ceil();
  if (needed <= 0) return zero_to(p, std::move(precision));
  BigInt modulus = ipow(BigInt(p), needed.get_ui());
  BigInt inv_den;
  BigInt den = unit.den();
  mpz_invert(inv_den.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t());
  BigInt x = unit.num() * inv_den;
  mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
  PadicAccumulator acc(p, 0, std::move(precision));
  acc.add(BigInt(v), x);
  return acc.finish();
}

RamifiedPadic RamifiedPadic::monomial(std::uint32_t p, std::int64_t digit, const Rational& exponent,
                                      Rational precision) {
  checked_prime(p);
  unsigned depth = exponent_depth(exponent, p);
  PadicAccumulator acc(p, depth, std::move(precision));
  acc.add(acc.key(exponent), BigInt(long(digit)));
  return acc.finish();
}

Valuation RamifiedPadic::valuation() const {
  if (!digits_.empty()) return Valuation::exact(digits_.front().exponent);
  return Valuation::at_least(precision_);
}

RamifiedPadic RamifiedPadic::operator-() const {
  PadicAccumulator acc(p_, depth_, precision_);
  acc.add_element(*this, -1);
  return acc.finish();
}

RamifiedPadic operator+(const RamifiedPadic& a, const RamifiedPadic& b) {
  require_same(a, b);
  PadicAccumulator acc(a.p_, std::max(a.depth_, b.depth_), min(a.precision_, b.precision_));
  acc.add_element(a, 1);
  acc.add_element(b, 1);
  return acc.finish();
}

RamifiedPadic operator-(const RamifiedPadic& a, const RamifiedPadic& b) {
  require_same(a, b);
  PadicAccumulator acc(a.p_, std::max(a.depth_, b.depth_), min(a.precision_, b.precision_));
  acc.add_element(a, 1);
  acc.add_element(b, -1);
  return acc.finish();
}

RamifiedPadic operator*(const RamifiedPadic& a, const RamifiedPadic& b) {
  require_same(a, b);
  if (a.is_zero() || b.is_zero()) {
    const RamifiedPadic& empty = a.is_zero() ? a : b;
    throw PrecisionError("indeterminate valuation: factor is zero to precision " + empty.precision_.str());
  }
  Rational cap = min(a.digits_.front().exponent + b.precision_, b.digits_.front().exponent + a.precision_);
  PadicAccumulator acc(a.p_, std::max(a.depth_, b.depth_), cap);
  for (const auto& da : a.digits_) {
    for (const auto& db : b.digits_) {
      Rational e = da.exponent + db.exponent;
      if (e >= cap) break;
      acc.add(acc.key(e), BigInt(long(da.digit) * long(db.digit)));
    }
  }
  return acc.finish();
}

RamifiedPadic RamifiedPadic::pow(unsigned long n) const {
  if (n == 0) return one_like();
  if (is_zero()) return RamifiedPadic(p_, depth_, precision_ * Rational(long(n)));
  RamifiedPadic result = *this;
  RamifiedPadic base = *this;
  --n;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

RamifiedPadic RamifiedPadic::capped(const Rational& cap) const {
  if (precision_ <= cap) return *this;
  RamifiedPadic r = *this;
  r.precision_ = cap;
  std::erase_if(r.digits_, [&](const Digit& d) { return d.exponent >= cap; });
  return r;
}

RamifiedPadic RamifiedPadic::reanchored(const Rational& prec) const {
  RamifiedPadic r = *this;
  r.precision_ = prec;
  std::erase_if(r.digits_, [&](const Digit& d) { return d.exponent >= prec; });
  return r;
}

RamifiedPadic RamifiedPadic::inverse(const Rational& out_prec) const {
  if (is_zero()) throw PrecisionError("inverse of an element that is zero to precision " + precision_.str());
  const Rational lead = digits_.front().exponent;
  // unit part u = a * p^(-lead)
  RamifiedPadic u = *this;
  for (auto& d : u.digits_) d.exponent -= lead;
  u.precision_ -= lead;
  Rational relative = min(out_prec + lead, u.precision_);
  if (relative <= 0)
    throw PrecisionError("insufficient precision to invert: relative precision " + relative.str());

  RamifiedPadic one = from_integer(p_, 1, relative);
  RamifiedPadic x = from_integer(p_, fp::inv(digits_.front().digit, p_), relative);
  Rational last_error;
  for (int iter = 0;; ++iter) {
    RamifiedPadic err = (u * x).capped(relative) - one;
    Valuation ve = err.valuation();
    if (ve.certainly_at_least(relative)) break;
    if (iter > 0 && ve.value() <= last_error)
      throw PrecisionError("Newton inversion stalled at relative precision " + ve.value().str());
    last_error = ve.value();
    x = (x - x * err).capped(relative);
  }
  x = x.capped(relative);
  for (auto& d : x.digits_) d.exponent -= lead;
  x.precision_ -= lead;
  x.depth_ = std::max(x.depth_, depth_);
  return x;
}

bool RamifiedPadic::agrees_with(const RamifiedPadic& o) const {
  if (p_ != o.p_) return false;
  Rational cap = min(precision_, o.precision_);
  return capped(cap).digits_ == o.capped(cap).digits_;
}

std::string RamifiedPadic::str() const {
  std::string out;
  for (const auto& d : digits_) {
    if (!out.empty()) out += " + ";
    out += std::to_string(d.digit) + "*p^(" + d.exponent.str() + ")";
  }
  if (!out.empty()) out += " + ";
  out += "O(p^(" + precision_.str() + "))";
  return out;
}

QuasiAdditivityReport quasi_additivity_check(const std::vector<RamifiedPadic>& c) {
  if (c.empty()) throw std::invalid_argument("quasi-additivity check needs at least one element");
  const std::uint32_t p = c.front().characteristic();
  const Rational bound = -Rational(1) / Rational(long(p));
  for (const auto& ci : c) {
    if (ci.characteristic() != p) throw DomainMismatch("mixed residue characteristics");
    if (!ci.valuation().certainly_at_least(bound))
      throw HypothesisError("element " + ci.str() + " has value below -vp/p = " + bound.str());
  }
  RamifiedPadic sum = c.front();
  RamifiedPadic sum_of_powers = c.front().pow(p);
  for (std::size_t i = 1; i < c.size(); ++i) {
    sum += c[i];
    sum_of_powers += c[i].pow(p);
  }
  RamifiedPadic diff = sum.pow(p) - sum_of_powers;
  Valuation v = diff.valuation();
  if (v.is_at_least() && v.value() < 0)
    throw PrecisionError("working precision too low: difference only known to p^(" + v.value().str() + ")");
  return {v.certainly_at_least(Rational(0)), v};
}

TowerResidualReport qp_tower_residual(std::uint32_t p, unsigned k, const Rational& precision) {
  if (k < 1) throw std::invalid_argument("tower depth must be >= 1");
  checked_prime(p);
  RamifiedPadic theta = RamifiedPadic::zero_to(p, precision);
  BigInt pk(1);
  for (unsigned i = 1; i <= k; ++i) {
    pk *= p;
    theta += RamifiedPadic::monomial(p, 1, -Rational(1) / Rational(pk), precision);
  }
  RamifiedPadic residual =
      theta.pow(p) - theta - RamifiedPadic::from_rational(p, Rational(1) / Rational(long(p)), precision);
  Valuation v = residual.valuation();
  if (!v.is_exact())
    throw PrecisionError("working precision " + precision.str() + " cannot certify the residual; raise it");
  return {v.value()};
}

}  // namespace defekt
