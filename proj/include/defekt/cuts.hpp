#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "defekt/rational.hpp"

namespace defekt {

// Archimedean subgroup of Q: generator * Z (discrete), generator * Z[1/p],
// or Q itself.
class ValueGroup {
 public:
  enum class Kind { Cyclic, Localized, Rationals };

  static ValueGroup cyclic(Rational generator = Rational(1));
  static ValueGroup localized(std::uint32_t p, Rational generator = Rational(1));
  static ValueGroup rationals();

  Kind kind() const { return kind_; }
  bool is_dense() const { return kind_ != Kind::Cyclic; }
  bool contains(const Rational& a) const;
  std::string str() const;

  friend bool operator==(const ValueGroup&, const ValueGroup&) = default;

 private:
  ValueGroup(Kind k, std::uint32_t p, Rational g) : kind_(k), p_(p), generator_(std::move(g)) {}
  Kind kind_;
  std::uint32_t p_;
  Rational generator_;
};

// Initial segment of a dense value group with a rational bound:
// {a < q}, {a <= q}, the empty set, or the whole group. A bound outside the
// group makes "<=" and "<" coincide; such cuts are stored as LessThan.
class Cut {
 public:
  enum class Kind { Empty, LessThan, LessOrEqual, All };

  static Cut empty(const ValueGroup& g);
  static Cut less_than(Rational bound, const ValueGroup& g);
  static Cut less_or_equal(Rational bound, const ValueGroup& g);
  static Cut all(const ValueGroup& g);
  // "empty", "lt:q", "le:q", "all"
  static Cut parse(std::string_view literal, const ValueGroup& g);

  Kind kind() const { return kind_; }
  const std::optional<Rational>& bound() const { return bound_; }
  const ValueGroup& group() const { return group_; }

  // Membership of a group element in the left set.
  bool contains(const Rational& a) const;
  std::string str() const;

  friend bool operator==(const Cut&, const Cut&) = default;

 private:
  Cut(Kind k, std::optional<Rational> b, ValueGroup g);
  Kind kind_;
  std::optional<Rational> bound_;
  ValueGroup group_;
};

// Minkowski sum of two initial segments of the same dense group.
Cut cut_add(const Cut& a, const Cut& b);

// c + c = c; in an archimedean group only empty, lt:0, le:0 and all qualify.
bool is_idempotent(const Cut& c);

enum class DefectType { Independent, Dependent };
std::string to_string(DefectType t);

// Dependent/independent type of an Artin-Schreier defect extension from its
// distance cut. Requires a nonempty proper cut contained in the negative
// part of the group; independent iff the cut is idempotent.
DefectType classify_as_defect(const Cut& c);

struct DistanceItem {
  std::string label;
  Rational distance;
};

struct DistanceEvidence {
  std::vector<DistanceItem> items;
  Cut claimed;
};

struct EvidenceReport {
  std::size_t count;
  // Finite evidence never proves cofinality; this only says the data do not
  // contradict the claimed cut.
  bool consistent;
  std::optional<Rational> last_gap;  // bound - last distance, for lt/le cuts
  std::string summary;
};

// Distances must strictly increase and lie in the claimed cut.
// Throws HypothesisError on either violation or with fewer than two items.
EvidenceReport evidence_check(const DistanceEvidence& ev);

// JSON array of {"label": ..., "distance": "q"}.
std::vector<DistanceItem> parse_distance_items(std::string_view json_text);

}  // namespace defekt
