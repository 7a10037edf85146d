#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "defekt/expr.hpp"
#include "defekt/hahn.hpp"
#include "defekt/padic.hpp"
#include "defekt/poly.hpp"
#include "defekt/valuation.hpp"

namespace defekt {

enum class Domain { Series, Padic };

struct EvalConfig {
  std::uint32_t p = 2;
  // Working precision: truncation point for inverses, and the absolute
  // precision carried by every p-adic literal.
  Rational precision{10};
};

// p-adic when a p^(q) literal occurs, series otherwise; DomainMismatch when both do.
Domain detect_domain(const expr::Node& n);

using SeriesPoly = ValuedPoly<HahnSeries>;
using PadicPoly = ValuedPoly<RamifiedPadic>;

// Either a polynomial in X (degree 0 for plain elements) or the answer to a
// top-level v(...) query.
struct EvalValue {
  std::variant<SeriesPoly, PadicPoly, Valuation> value;

  Domain domain() const;
  bool is_valuation() const { return std::holds_alternative<Valuation>(value); }
  // Degree in X, 0 for constants; -1 for the zero polynomial and for valuations.
  long degree() const;
  std::string str() const;
};

EvalValue evaluate(const expr::Node& n, const EvalConfig& cfg);
EvalValue evaluate(std::string_view src, const EvalConfig& cfg);

// The expression read as a polynomial in X over the series domain.
SeriesPoly evaluate_series_poly(const expr::Node& n, const EvalConfig& cfg);
PadicPoly evaluate_padic_poly(const expr::Node& n, const EvalConfig& cfg);

}  // namespace defekt
