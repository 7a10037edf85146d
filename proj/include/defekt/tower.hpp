#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "defekt/hahn.hpp"
#include "defekt/poly.hpp"
#include "defekt/rational.hpp"
#include "defekt/valuation.hpp"

namespace defekt {

struct TowerLevel;

// Element of a tower of degree-p extensions over F_p((t^(1/D))). A level-k
// element is the coefficient vector (c_0, ..., c_{p-1}) of 1, a_k, ...,
// a_k^(p-1) with level-(k-1) coefficients; level 0 holds a HahnSeries.
class TowerElement {
 public:
  std::size_t level() const;
  std::uint32_t characteristic() const;
  const std::shared_ptr<const TowerLevel>& node() const { return node_; }

  const HahnSeries& base_value() const;                  // level 0 only
  const std::vector<TowerElement>& coefficients() const;  // level > 0 only

  bool is_exact_zero() const;
  bool is_zero() const;

  // min_j (v(c_j) + j * v(a_k)), exact because the j * v(a_k) lie in
  // pairwise distinct cosets of the lower value group.
  Valuation valuation() const;

  TowerElement operator-() const;
  friend TowerElement operator+(const TowerElement& a, const TowerElement& b);
  friend TowerElement operator-(const TowerElement& a, const TowerElement& b);
  friend TowerElement operator*(const TowerElement& a, const TowerElement& b);
  TowerElement& operator+=(const TowerElement& o) { return *this = *this + o; }
  TowerElement& operator*=(const TowerElement& o) { return *this = *this * o; }

  TowerElement pow(unsigned long n) const;
  // Solves the p x p system of the multiplication-by-x map at each level via
  // cofactors; only the final base-level division is inexact, computed to the
  // tower's working precision.
  TowerElement inverse() const;
  // Same, with an explicit absolute precision for base-level inversions.
  TowerElement inverse(const Rational& base_prec) const;

  // Embeds into a higher level of the same tower.
  TowerElement lifted_to(const std::shared_ptr<const TowerLevel>& target) const;

  // Equality up to the smaller precision, coefficientwise.
  bool agrees_with(const TowerElement& o) const;

  TowerElement zero_like() const;
  TowerElement one_like() const;

  std::string str() const;

  friend bool operator==(const TowerElement& a, const TowerElement& b);

 private:
  friend class Tower;
  TowerElement(std::shared_ptr<const TowerLevel> node, HahnSeries base);
  TowerElement(std::shared_ptr<const TowerLevel> node, std::vector<TowerElement> coeffs);

  static TowerElement zero_at(const std::shared_ptr<const TowerLevel>& node);
  static TowerElement one_at(const std::shared_ptr<const TowerLevel>& node);
  TowerElement times_generator() const;

  std::shared_ptr<const TowerLevel> node_;
  std::optional<HahnSeries> base_;
  std::vector<TowerElement> coeffs_;
};

// One level of a tower. Immutable; shared by every element living there.
struct TowerLevel {
  std::shared_ptr<const TowerLevel> parent;  // null at the base
  std::uint32_t p;
  std::size_t index;
  Rational working_precision;
  BigInt group_denominator;  // value group = (1/D) Z
  // index > 0: a^p = -(minpoly[0] + minpoly[1] a + ... + minpoly[p-1] a^(p-1))
  std::vector<TowerElement> minpoly;
  Rational gen_val;
};

// Chain of totally value-ramified degree-p steps over F_p((t^(1/D))).
class Tower {
 public:
  // Base F_p((t^(1/D))) with value group (1/D)Z; `working_precision` bounds
  // the absolute precision of base-level inversions.
  static Tower laurent(std::uint32_t p, Rational working_precision, BigInt base_denominator = 1);

  // Adjoins a root of the monic degree-p `minpoly` (coefficients in this
  // tower) with value gen_val. The Newton polygon must certify gen_val, and
  // 0, gen_val, ..., (p-1) gen_val must lie in distinct cosets of the current
  // value group with p gen_val inside it. Residue-inert steps are rejected.
  Tower extend(const ValuedPoly<TowerElement>& minpoly, const Rational& gen_val) const;

  std::size_t height() const { return top_->index; }
  std::uint32_t characteristic() const { return top_->p; }
  const Rational& working_precision() const { return top_->working_precision; }
  // (vL : vK) over the base.
  BigInt value_group_index() const;
  const std::shared_ptr<const TowerLevel>& top() const { return top_; }
  std::shared_ptr<const TowerLevel> node(std::size_t level) const;

  // Embeds a base series; its exponents must lie in the base value group.
  TowerElement embed(const HahnSeries& s) const;
  // a_level, 1 <= level <= height.
  TowerElement generator(std::size_t level) const;
  const Rational& generator_valuation(std::size_t level) const;
  TowerElement zero() const { return TowerElement::zero_at(top_); }
  TowerElement one() const { return TowerElement::one_at(top_); }
  TowerElement lift(const TowerElement& x) const { return x.lifted_to(top_); }

 private:
  explicit Tower(std::shared_ptr<const TowerLevel> top) : top_(std::move(top)) {}
  std::shared_ptr<const TowerLevel> top_;
};

// Artin-Schreier tower: a_1 root of X^p - X - c, a_{i+1} root of
// X^p - X + a_i, v(a_i) = -1/p^i. `c` defaults to 1/t.
Tower build_as_tower(std::uint32_t p, std::size_t height, const Rational& working_precision,
                     const std::optional<HahnSeries>& c = std::nullopt);

struct AsTowerIdentityReport {
  std::size_t level;
  bool holds;                  // eta_k^p - 1/t == a_k exactly
  bool holds_negated;          // eta_k^p - 1/t == -a_k exactly
  std::string computed;        // eta_k^p - 1/t
  std::string expected;        // a_k
  Rational distance;           // v(eta - eta_k) = v(a_k)/p, from (eta - eta_k)^p = -a_k
};

// Checks the exact identity eta_k^p - 1/t = a_k for eta_k = a_1 + ... + a_k,
// i.e. (eta - eta_k)^p = -a_k where eta^p = 1/t.
AsTowerIdentityReport as_tower_identity_check(const Tower& tower, std::size_t k);

}  // namespace defekt
