#include "defekt/tower.hpp"

#include "defekt/errors.hpp"

namespace defekt {

namespace {

using NodePtr = std::shared_ptr<const TowerLevel>;

// Ancestor of `node` at `level`; node->index >= level.
const TowerLevel* ancestor(const TowerLevel* node, std::size_t level) {
  while (node && node->index > level) node = node->parent.get();
  return node;
}

Valuation shifted(const Valuation& v, const Rational& shift) {
  switch (v.kind()) {
    case Valuation::Kind::Exact:
      return Valuation::exact(v.value() + shift);
    case Valuation::Kind::AtLeast:
      return Valuation::at_least(v.value() + shift);
    case Valuation::Kind::Infinite:
      break;
  }
  return v;
}

// Brings both operands to the higher of their two levels.
std::pair<TowerElement, TowerElement> aligned(const TowerElement& a, const TowerElement& b) {
  if (a.level() == b.level()) {
    if (a.node() != b.node()) throw DomainMismatch("elements belong to different towers");
    return {a, b};
  }
  if (a.level() < b.level()) return {a.lifted_to(b.node()), b};
  return {a, b.lifted_to(a.node())};
}

}  // namespace

TowerElement::TowerElement(std::shared_ptr<const TowerLevel> node, HahnSeries base)
    : node_(std::move(node)), base_(std::move(base)) {}

TowerElement::TowerElement(std::shared_ptr<const TowerLevel> node, std::vector<TowerElement> coeffs)
    : node_(std::move(node)), coeffs_(std::move(coeffs)) {}

std::size_t TowerElement::level() const { return node_->index; }
std::uint32_t TowerElement::characteristic() const { return node_->p; }

const HahnSeries& TowerElement::base_value() const {
  if (!base_) throw std::logic_error("base_value() on a level-" + std::to_string(level()) + " element");
  return *base_;
}

const std::vector<TowerElement>& TowerElement::coefficients() const {
  if (base_) throw std::logic_error("coefficients() on a base element");
  return coeffs_;
}

TowerElement TowerElement::zero_at(const NodePtr& node) {
  if (node->index == 0) return TowerElement(node, HahnSeries::zero(node->p));
  std::vector<TowerElement> cs(node->p, zero_at(node->parent));
  return TowerElement(node, std::move(cs));
}

TowerElement TowerElement::one_at(const NodePtr& node) {
  if (node->index == 0) return TowerElement(node, HahnSeries::one(node->p));
  std::vector<TowerElement> cs(node->p, zero_at(node->parent));
  cs[0] = one_at(node->parent);
  return TowerElement(node, std::move(cs));
}

TowerElement TowerElement::zero_like() const { return zero_at(node_); }
TowerElement TowerElement::one_like() const { return one_at(node_); }

bool TowerElement::is_exact_zero() const {
  if (base_) return base_->is_exact_zero();
  for (const auto& c : coeffs_)
    if (!c.is_exact_zero()) return false;
  return true;
}

bool TowerElement::is_zero() const {
  if (base_) return base_->is_zero();
  for (const auto& c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

Valuation TowerElement::valuation() const {
  if (base_) return base_->valuation();
  Valuation v = Valuation::infinite();
  for (std::size_t j = 0; j < coeffs_.size(); ++j)
    v = min_noncancelling(v, shifted(coeffs_[j].valuation(), node_->gen_val * Rational(long(j))));
  return v;
}

TowerElement TowerElement::lifted_to(const NodePtr& target) const {
  if (target->index < level() || ancestor(target.get(), level()) != node_.get())
    throw DomainMismatch("cannot embed a level-" + std::to_string(level()) + " element into this tower level");
  if (target.get() == node_.get()) return *this;
  TowerElement lower = lifted_to(target->parent);
  std::vector<TowerElement> cs(target->p, zero_at(target->parent));
  cs[0] = std::move(lower);
  return TowerElement(target, std::move(cs));
}

TowerElement TowerElement::operator-() const {
  if (base_) return TowerElement(node_, -*base_);
  std::vector<TowerElement> cs;
  cs.reserve(coeffs_.size());
  for (const auto& c : coeffs_) cs.push_back(-c);
  return TowerElement(node_, std::move(cs));
}

TowerElement operator+(const TowerElement& a0, const TowerElement& b0) {
  auto [a, b] = aligned(a0, b0);
  if (a.base_) return TowerElement(a.node_, *a.base_ + *b.base_);
  std::vector<TowerElement> cs;
  cs.reserve(a.coeffs_.size());
  for (std::size_t j = 0; j < a.coeffs_.size(); ++j) cs.push_back(a.coeffs_[j] + b.coeffs_[j]);
  return TowerElement(a.node_, std::move(cs));
}

TowerElement operator-(const TowerElement& a, const TowerElement& b) { return a + (-b); }

TowerElement operator*(const TowerElement& a0, const TowerElement& b0) {
  auto [a, b] = aligned(a0, b0);
  if (a.base_) return TowerElement(a.node_, *a.base_ * *b.base_);
  const TowerLevel& lvl = *a.node_;
  const std::size_t p = lvl.p;
  const TowerElement zero = TowerElement::zero_at(lvl.parent);
  std::vector<TowerElement> h(2 * p - 1, zero);
  for (std::size_t i = 0; i < p; ++i) {
    if (a.coeffs_[i].is_exact_zero()) continue;
    for (std::size_t j = 0; j < p; ++j) {
      if (b.coeffs_[j].is_exact_zero()) continue;
      h[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  // a^j = -a^(j-p) (m_0 + ... + m_{p-1} a^(p-1)) for j >= p
  for (std::size_t j = 2 * p - 2; j >= p; --j) {
    if (h[j].is_exact_zero()) continue;
    for (std::size_t i = 0; i < p; ++i) {
      if (lvl.minpoly[i].is_exact_zero()) continue;
      h[j - p + i] = h[j - p + i] - h[j] * lvl.minpoly[i];
    }
  }
  h.erase(h.begin() + long(p), h.end());
  return TowerElement(a.node_, std::move(h));
}

TowerElement TowerElement::times_generator() const {
  const TowerLevel& lvl = *node_;
  const std::size_t p = lvl.p;
  std::vector<TowerElement> cs(p, zero_at(lvl.parent));
  for (std::size_t j = 0; j + 1 < p; ++j) cs[j + 1] = coeffs_[j];
  const TowerElement& top = coeffs_[p - 1];
  if (!top.is_exact_zero())
    for (std::size_t i = 0; i < p; ++i)
      if (!lvl.minpoly[i].is_exact_zero()) cs[i] = cs[i] - top * lvl.minpoly[i];
  return TowerElement(node_, std::move(cs));
}

TowerElement TowerElement::pow(unsigned long n) const {
  TowerElement result = one_like();
  TowerElement base = *this;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

namespace {

using Matrix = std::vector<std::vector<TowerElement>>;

// Determinant of the submatrix on `rows` x `cols` by dynamic programming over
// subsets of used columns (sum over permutations, O(k 2^k) products).
TowerElement subdeterminant(const Matrix& m, const std::vector<std::size_t>& rows,
                            const std::vector<std::size_t>& cols, const TowerElement& zero,
                            const TowerElement& one) {
  const std::size_t k = rows.size();
  std::vector<std::optional<TowerElement>> dp(std::size_t(1) << k);
  dp[0] = one;
  for (std::size_t mask = 0; mask < dp.size(); ++mask) {
    if (!dp[mask] || dp[mask]->is_exact_zero()) continue;
    const std::size_t r = std::size_t(__builtin_popcountll(mask));
    if (r == k) continue;
    for (std::size_t c = 0; c < k; ++c) {
      if (mask & (std::size_t(1) << c)) continue;
      const TowerElement& entry = m[rows[r]][cols[c]];
      if (entry.is_exact_zero()) continue;
      // inversions contributed: used columns to the right of c
      std::size_t above = std::size_t(__builtin_popcountll(mask >> (c + 1)));
      TowerElement term = *dp[mask] * entry;
      if (above % 2) term = -term;
      auto& slot = dp[mask | (std::size_t(1) << c)];
      slot = slot ? *slot + term : term;
    }
  }
  const auto& full = dp.back();
  return full ? *full : zero;
}

}  // namespace

TowerElement TowerElement::inverse() const { return inverse(node_->working_precision); }

TowerElement TowerElement::inverse(const Rational& base_prec) const {
  if (is_exact_zero()) throw DivisionByZero();
  if (base_) return TowerElement(node_, base_->inverse(base_prec));
  const std::size_t p = node_->p;
  // column c holds the coefficients of x * a^c
  Matrix m(p, std::vector<TowerElement>(p, zero_at(node_->parent)));
  TowerElement col = *this;
  for (std::size_t c = 0; c < p; ++c) {
    for (std::size_t r = 0; r < p; ++r) m[r][c] = col.coeffs_[r];
    if (c + 1 < p) col = col.times_generator();
  }
  const TowerElement zero = zero_at(node_->parent);
  const TowerElement one = one_at(node_->parent);
  std::vector<std::size_t> all(p);
  for (std::size_t i = 0; i < p; ++i) all[i] = i;
  const TowerElement det = subdeterminant(m, all, all, zero, one);
  if (det.is_exact_zero()) throw DivisionByZero();
  const TowerElement det_inv = det.inverse(base_prec);

  std::vector<std::size_t> lower_rows(all.begin() + 1, all.end());
  std::vector<TowerElement> y;
  y.reserve(p);
  for (std::size_t c = 0; c < p; ++c) {
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < p; ++j)
      if (j != c) cols.push_back(j);
    TowerElement cof = subdeterminant(m, lower_rows, cols, zero, one);
    if (c % 2) cof = -cof;
    y.push_back(cof.is_exact_zero() ? zero : cof * det_inv);
  }
  return TowerElement(node_, std::move(y));
}

bool TowerElement::agrees_with(const TowerElement& o) const {
  auto [a, b] = aligned(*this, o);
  if (a.base_) return a.base_->agrees_with(*b.base_);
  for (std::size_t j = 0; j < a.coeffs_.size(); ++j)
    if (!a.coeffs_[j].agrees_with(b.coeffs_[j])) return false;
  return true;
}

bool operator==(const TowerElement& a0, const TowerElement& b0) {
  if (a0.level() != b0.level()) {
    auto [a, b] = aligned(a0, b0);
    return a == b;
  }
  if (a0.node_ != b0.node_) return false;
  if (a0.base_) return *a0.base_ == *b0.base_;
  return a0.coeffs_ == b0.coeffs_;
}

std::string TowerElement::str() const {
  if (base_) return base_->str();
  std::string out;
  const std::string gen = "a" + std::to_string(level());
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    const auto& c = coeffs_[j];
    if (c.is_exact_zero()) continue;
    if (!out.empty()) out += " + ";
    std::string mono = j == 0 ? "" : (j == 1 ? gen : gen + "^" + std::to_string(j));
    if (mono.empty())
      out += "(" + c.str() + ")";
    else if (c == c.one_like())
      out += mono;
    else
      out += "(" + c.str() + ")*" + mono;
  }
  return out.empty() ? "0" : out;
}

Tower Tower::laurent(std::uint32_t p, Rational working_precision, BigInt base_denominator) {
  if (base_denominator <= 0) throw std::invalid_argument("base denominator must be positive");
  auto node = std::make_shared<TowerLevel>();
  node->p = checked_prime(p);
  node->index = 0;
  node->working_precision = std::move(working_precision);
  node->group_denominator = std::move(base_denominator);
  return Tower(std::move(node));
}

std::shared_ptr<const TowerLevel> Tower::node(std::size_t level) const {
  if (level > height()) throw std::out_of_range("tower has height " + std::to_string(height()));
  NodePtr n = top_;
  while (n->index > level) n = n->parent;
  return n;
}

BigInt Tower::value_group_index() const {
  const TowerLevel* base = ancestor(top_.get(), 0);
  return top_->group_denominator / base->group_denominator;
}

TowerElement Tower::embed(const HahnSeries& s) const {
  if (s.characteristic() != characteristic()) throw DomainMismatch("characteristic mismatch in embed");
  NodePtr base = node(0);
  const Rational d(base->group_denominator);
  for (const auto& t : s.terms())
    if (!(t.exponent * d).is_integer())
      throw DomainMismatch("exponent " + t.exponent.str() + " is outside the base value group (1/" +
                           base->group_denominator.get_str() + ")Z");
  return TowerElement(base, s);
}

TowerElement Tower::generator(std::size_t level) const {
  if (level == 0) throw std::out_of_range("the base level has no generator");
  NodePtr n = node(level);
  std::vector<TowerElement> cs(n->p, TowerElement::zero_at(n->parent));
  cs[1] = TowerElement::one_at(n->parent);
  return TowerElement(n, std::move(cs));
}

const Rational& Tower::generator_valuation(std::size_t level) const {
  if (level == 0) throw std::out_of_range("the base level has no generator");
  return node(level)->gen_val;
}

Tower Tower::extend(const ValuedPoly<TowerElement>& minpoly, const Rational& gen_val) const {
  const std::uint32_t p = characteristic();
  if (minpoly.degree() != long(p))
    throw HypothesisError("minimal polynomial must have degree p = " + std::to_string(p));
  std::vector<TowerElement> coeffs;
  for (long i = 0; i <= long(p); ++i) coeffs.push_back(lift(minpoly.coeff(i)));
  if (!(coeffs[p] == one())) throw HypothesisError("minimal polynomial must be monic");

  ValuedPoly<TowerElement> lifted(coeffs);
  NewtonPolygon polygon = newton_polygon(lifted);
  if (!polygon.certifies(gen_val))
    throw HypothesisError("Newton polygon does not certify a root of value " + gen_val.str());

  const Rational d(top_->group_denominator);
  for (long j = 1; j < long(p); ++j)
    if ((gen_val * Rational(j) * d).is_integer())
      throw HypothesisError("step is not value-ramified: " + std::to_string(j) + "*" + gen_val.str() +
                            " lies in the current value group");
  if (!(gen_val * Rational(long(p)) * d).is_integer())
    throw HypothesisError("p * " + gen_val.str() + " is not in the current value group");

  auto node = std::make_shared<TowerLevel>();
  node->parent = top_;
  node->p = p;
  node->index = top_->index + 1;
  node->working_precision = top_->working_precision;
  node->group_denominator = top_->group_denominator * p;
  coeffs.pop_back();
  node->minpoly = std::move(coeffs);
  node->gen_val = gen_val;
  return Tower(std::move(node));
}

Tower build_as_tower(std::uint32_t p, std::size_t height, const Rational& working_precision,
                     const std::optional<HahnSeries>& c) {
  Tower tower = Tower::laurent(p, working_precision);
  if (height == 0) return tower;
  const HahnSeries constant = c.value_or(HahnSeries::monomial(p, 1, Rational(-1)));
  using P = ValuedPoly<TowerElement>;
  const TowerElement one = tower.one();
  // X^p - X - c
  P first = P::monomial(one, p) - P::monomial(one, 1) - P::constant(tower.embed(constant));
  BigInt pk(p);
  tower = tower.extend(first, -Rational(1) / Rational(pk));
  for (std::size_t i = 1; i < height; ++i) {
    pk *= p;
    const TowerElement lvl_one = tower.one();
    P next = P::monomial(lvl_one, p) - P::monomial(lvl_one, 1) + P::constant(tower.generator(i));
    tower = tower.extend(next, -Rational(1) / Rational(pk));
  }
  return tower;
}

AsTowerIdentityReport as_tower_identity_check(const Tower& tower, std::size_t k) {
  if (k < 1 || k > tower.height())
    throw std::out_of_range("identity check level " + std::to_string(k) + " outside tower of height " +
                            std::to_string(tower.height()));
  const std::uint32_t p = tower.characteristic();
  auto node = tower.node(k);
  TowerElement eta = TowerElement(tower.generator(1)).lifted_to(node);
  for (std::size_t i = 2; i <= k; ++i) eta = eta + tower.generator(i).lifted_to(node);
  TowerElement inv_t = tower.embed(HahnSeries::monomial(p, 1, Rational(-1))).lifted_to(node);
  TowerElement lhs = eta.pow(p) - inv_t;
  TowerElement a_k = tower.generator(k);
  Valuation va = a_k.valuation();
  return {k,
          lhs == a_k,
          lhs == -a_k,
          lhs.str(),
          a_k.str(),
          va.value() / Rational(long(p))};
}

}  // namespace defekt
