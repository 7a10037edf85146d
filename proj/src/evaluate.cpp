#include "defekt/evaluate.hpp"

namespace defekt {

using expr::Func;
using expr::Kind;
using expr::Node;

namespace {

void scan_literals(const Node& n, bool& has_t, bool& has_p) {
  if (n.kind == Kind::TPower) has_t = true;
  if (n.kind == Kind::PPower) has_p = true;
  for (const auto& c : n.children) scan_literals(c, has_t, has_p);
}

bool power_of(BigInt d, std::uint32_t p) {
  while (d % p == 0) d /= p;
  return d == 1;
}

template <class C>
struct Literals;

template <>
struct Literals<HahnSeries> {
  static HahnSeries number(const EvalConfig& cfg, const Rational& q) { return HahnSeries::constant(cfg.p, q); }
  static HahnSeries t_power(const EvalConfig& cfg, const Rational& q) { return HahnSeries::monomial(cfg.p, 1, q); }
  static HahnSeries p_power(const EvalConfig&, const Rational&) {
    throw DomainMismatch("p^(q) literal in a series expression");
  }
  static HahnSeries frobenius(const HahnSeries& x) { return x.frobenius(); }
  static HahnSeries pth_root(const HahnSeries& x) { return x.pth_root(); }
};

template <>
struct Literals<RamifiedPadic> {
  static RamifiedPadic number(const EvalConfig& cfg, const Rational& q) {
    return RamifiedPadic::from_rational(cfg.p, q, cfg.precision);
  }
  static RamifiedPadic t_power(const EvalConfig&, const Rational&) {
    throw DomainMismatch("t^(q) literal in a p-adic expression");
  }
  static RamifiedPadic p_power(const EvalConfig& cfg, const Rational& q) {
    if (!power_of(q.den(), cfg.p))
      throw DomainMismatch("exponent " + q.str() + " is not in Z[1/" + std::to_string(cfg.p) + "]");
    return RamifiedPadic::monomial(cfg.p, 1, q, cfg.precision);
  }
  static RamifiedPadic frobenius(const RamifiedPadic&) {
    throw DomainMismatch("frob is only defined in characteristic p");
  }
  static RamifiedPadic pth_root(const RamifiedPadic&) {
    throw DomainMismatch("proot is only defined in characteristic p");
  }
};

template <class C>
class Evaluator {
 public:
  using Poly = ValuedPoly<C>;

  Evaluator(const EvalConfig& cfg) : cfg_(cfg), one_(Literals<C>::number(cfg, Rational(1))) {}

  Poly eval(const Node& n) const {
    using L = Literals<C>;
    switch (n.kind) {
      case Kind::Number:
        return Poly::constant(L::number(cfg_, n.value));
      case Kind::TPower:
        return Poly::constant(L::t_power(cfg_, n.value));
      case Kind::PPower:
        return Poly::constant(L::p_power(cfg_, n.value));
      case Kind::Var:
        return Poly::variable(one_);
      case Kind::Neg:
        return -eval(n.children[0]);
      case Kind::Add:
        return eval(n.children[0]) + eval(n.children[1]);
      case Kind::Sub:
        return eval(n.children[0]) - eval(n.children[1]);
      case Kind::Mul:
        return eval(n.children[0]) * eval(n.children[1]);
      case Kind::Div:
        return eval(n.children[0]) * Poly::constant(inverse(constant_of(n.children[1], "divisor")));
      case Kind::Pow:
        return eval(n.children[0]).pow(n.exponent);
      case Kind::Call:
        switch (n.func) {
          case Func::Neg:
            return -eval(n.children[0]);
          case Func::Inv:
            return Poly::constant(inverse(constant_of(n.children[0], "argument of inv")));
          case Func::Frob:
            return Poly::constant(L::frobenius(constant_of(n.children[0], "argument of frob")));
          case Func::Proot:
            return Poly::constant(L::pth_root(constant_of(n.children[0], "argument of proot")));
          case Func::V:
            throw DomainMismatch("v(...) is only allowed as the whole expression");
        }
    }
    throw std::logic_error("unhandled expression node");
  }

  C constant_of(const Node& n, const char* what) const {
    Poly f = eval(n);
    if (f.degree() > 0) throw DomainMismatch(std::string(what) + " must not contain X");
    return f.coeff(0);
  }

  Valuation valuation(const Node& n) const { return constant_of(n, "argument of v").valuation(); }

 private:
  C inverse(const C& x) const { return x.inverse(cfg_.precision); }

  const EvalConfig& cfg_;
  C one_;
};

template <class C>
EvalValue run(const Node& n, const EvalConfig& cfg) {
  Evaluator<C> ev(cfg);
  if (n.kind == Kind::Call && n.func == Func::V) return {ev.valuation(n.children[0])};
  return {ev.eval(n)};
}

template <class C>
std::string render(const ValuedPoly<C>& f) {
  if (f.degree() <= 0) return f.coeff(0).str();
  return f.str();
}

}  // namespace

Domain detect_domain(const Node& n) {
  bool has_t = false, has_p = false;
  scan_literals(n, has_t, has_p);
  if (has_t && has_p) throw DomainMismatch("expression mixes t-literals and p-literals");
  return has_p ? Domain::Padic : Domain::Series;
}

Domain EvalValue::domain() const {
  if (std::holds_alternative<PadicPoly>(value)) return Domain::Padic;
  return Domain::Series;
}

long EvalValue::degree() const {
  if (auto* f = std::get_if<SeriesPoly>(&value)) return f->is_zero() ? -1 : f->degree();
  if (auto* f = std::get_if<PadicPoly>(&value)) return f->is_zero() ? -1 : f->degree();
  return -1;
}

std::string EvalValue::str() const {
  if (auto* f = std::get_if<SeriesPoly>(&value)) return render(*f);
  if (auto* f = std::get_if<PadicPoly>(&value)) return render(*f);
  return std::get<Valuation>(value).str();
}

EvalValue evaluate(const Node& n, const EvalConfig& cfg) {
  return detect_domain(n) == Domain::Padic ? run<RamifiedPadic>(n, cfg) : run<HahnSeries>(n, cfg);
}

EvalValue evaluate(std::string_view src, const EvalConfig& cfg) { return evaluate(expr::parse(src), cfg); }

SeriesPoly evaluate_series_poly(const Node& n, const EvalConfig& cfg) {
  if (detect_domain(n) != Domain::Series) throw DomainMismatch("expected a series expression");
  return Evaluator<HahnSeries>(cfg).eval(n);
}

PadicPoly evaluate_padic_poly(const Node& n, const EvalConfig& cfg) {
  return Evaluator<RamifiedPadic>(cfg).eval(n);
}

}  // namespace defekt
