#include "defekt/cuts.hpp"

#include <json.hpp>

#include "defekt/errors.hpp"
#include "defekt/prime_field.hpp"

namespace defekt {

ValueGroup ValueGroup::cyclic(Rational generator) {
  if (generator.sign() <= 0) throw std::invalid_argument("group generator must be positive");
  return {Kind::Cyclic, 0, std::move(generator)};
}

ValueGroup ValueGroup::localized(std::uint32_t p, Rational generator) {
  if (generator.sign() <= 0) throw std::invalid_argument("group generator must be positive");
  return {Kind::Localized, checked_prime(p), std::move(generator)};
}

ValueGroup ValueGroup::rationals() { return {Kind::Rationals, 0, Rational(1)}; }

bool ValueGroup::contains(const Rational& a) const {
  switch (kind_) {
    case Kind::Rationals:
      return true;
    case Kind::Cyclic:
      return (a / generator_).is_integer();
    case Kind::Localized: {
      BigInt den = (a / generator_).den();
      while (mpz_divisible_ui_p(den.get_mpz_t(), p_)) den /= p_;
      return den == 1;
    }
  }
  return false;
}

std::string ValueGroup::str() const {
  switch (kind_) {
    case Kind::Rationals:
      return "Q";
    case Kind::Cyclic:
      return generator_.str() + "*Z";
    case Kind::Localized:
      return generator_.str() + "*Z[1/" + std::to_string(p_) + "]";
  }
  return "?";
}

Cut::Cut(Kind k, std::optional<Rational> b, ValueGroup g) : kind_(k), bound_(std::move(b)), group_(std::move(g)) {
  if (!group_.is_dense())
    throw DomainMismatch("cuts are only supported in dense value groups, not " + group_.str());
  if (kind_ == Kind::LessOrEqual && !group_.contains(*bound_)) kind_ = Kind::LessThan;
}

Cut Cut::empty(const ValueGroup& g) { return Cut(Kind::Empty, std::nullopt, g); }
Cut Cut::all(const ValueGroup& g) { return Cut(Kind::All, std::nullopt, g); }
Cut Cut::less_than(Rational bound, const ValueGroup& g) { return Cut(Kind::LessThan, std::move(bound), g); }
Cut Cut::less_or_equal(Rational bound, const ValueGroup& g) {
  return Cut(Kind::LessOrEqual, std::move(bound), g);
}

Cut Cut::parse(std::string_view literal, const ValueGroup& g) {
  if (literal == "empty") return empty(g);
  if (literal == "all") return all(g);
  if (literal.size() > 3 && literal[2] == ':') {
    std::string_view head = literal.substr(0, 2);
    Rational q = Rational::parse(literal.substr(3));
    if (head == "lt") return less_than(q, g);
    if (head == "le") return less_or_equal(q, g);
  }
  throw std::invalid_argument("malformed cut literal '" + std::string(literal) +
                              "' (expected empty, all, lt:q or le:q)");
}

bool Cut::contains(const Rational& a) const {
  switch (kind_) {
    case Kind::Empty:
      return false;
    case Kind::All:
      return true;
    case Kind::LessThan:
      return a < *bound_;
    case Kind::LessOrEqual:
      return a <= *bound_;
  }
  return false;
}

std::string Cut::str() const {
  switch (kind_) {
    case Kind::Empty:
      return "empty";
    case Kind::All:
      return "all";
    case Kind::LessThan:
      return "lt:" + bound_->str();
    case Kind::LessOrEqual:
      return "le:" + bound_->str();
  }
  return "?";
}

Cut cut_add(const Cut& a, const Cut& b) {
  if (!(a.group() == b.group()))
    throw DomainMismatch("cuts live in different groups: " + a.group().str() + " vs " + b.group().str());
  using K = Cut::Kind;
  if (a.kind() == K::Empty || b.kind() == K::Empty) return Cut::empty(a.group());
  if (a.kind() == K::All || b.kind() == K::All) return Cut::all(a.group());
  Rational sum = *a.bound() + *b.bound();
  if (a.kind() == K::LessOrEqual && b.kind() == K::LessOrEqual) return Cut::less_or_equal(sum, a.group());
  return Cut::less_than(sum, a.group());
}

bool is_idempotent(const Cut& c) { return cut_add(c, c) == c; }

std::string to_string(DefectType t) { return t == DefectType::Independent ? "Independent" : "Dependent"; }

DefectType classify_as_defect(const Cut& c) {
  switch (c.kind()) {
    case Cut::Kind::Empty:
      throw HypothesisError("precondition failed: the distance cut is empty");
    case Cut::Kind::All:
      throw HypothesisError("precondition failed: the distance cut is the whole group (generator lies in the completion)");
    case Cut::Kind::LessOrEqual:
      if (c.bound()->sign() >= 0)
        throw HypothesisError("precondition failed: cut " + c.str() +
                              " contains 0, but Artin-Schreier defect distances are negative");
      break;
    case Cut::Kind::LessThan:
      if (c.bound()->sign() > 0)
        throw HypothesisError("precondition failed: cut " + c.str() +
                              " contains positive values, but Artin-Schreier defect distances are negative");
      break;
  }
  return is_idempotent(c) ? DefectType::Independent : DefectType::Dependent;
}

EvidenceReport evidence_check(const DistanceEvidence& ev) {
  if (ev.items.size() < 2) throw HypothesisError("distance evidence needs at least two items");
  for (std::size_t i = 0; i < ev.items.size(); ++i) {
    const auto& it = ev.items[i];
    if (i > 0 && !(ev.items[i - 1].distance < it.distance))
      throw HypothesisError("distances not strictly increasing at '" + it.label + "' (" + it.distance.str() +
                            " after " + ev.items[i - 1].distance.str() + ")");
    if (!ev.claimed.contains(it.distance))
      throw HypothesisError("distance " + it.distance.str() + " at '" + it.label + "' lies outside the claimed cut " +
                            ev.claimed.str());
  }
  EvidenceReport r{ev.items.size(), true, std::nullopt, ""};
  if (ev.claimed.bound()) {
    r.last_gap = *ev.claimed.bound() - ev.items.back().distance;
    r.summary = std::to_string(r.count) + " strictly increasing distances below " + ev.claimed.bound()->str() +
                ", gaps shrinking to " + r.last_gap->str() + "; consistent with cofinality in " + ev.claimed.str();
  } else {
    r.summary = std::to_string(r.count) + " strictly increasing distances; consistent with " + ev.claimed.str();
  }
  return r;
}

std::vector<DistanceItem> parse_distance_items(std::string_view json_text) {
  try {
    nlohmann::json doc = nlohmann::json::parse(json_text);
    if (!doc.is_array()) throw std::invalid_argument("evidence must be a JSON array");
    std::vector<DistanceItem> items;
    for (const auto& entry : doc) {
      const auto& d = entry.at("distance");
      Rational q = d.is_string() ? Rational::parse(d.get<std::string>()) : Rational(d.get<long>());
      items.push_back({entry.at("label").get<std::string>(), q});
    }
    return items;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed evidence: ") + e.what());
  }
}

}  // namespace defekt
