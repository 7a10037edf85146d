#include "defekt/catalog.hpp"

#include <functional>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "defekt/cuts.hpp"
#include "defekt/errors.hpp"
#include "defekt/newton_polygon.hpp"
#include "defekt/padic.hpp"
#include "defekt/tower.hpp"
#include "defekt/vp_rational.hpp"

namespace defekt {

namespace {

using HPoly = ValuedPoly<HahnSeries>;
using QPoly = ValuedPoly<VpRational>;

Rational inv_pow(std::uint32_t p, unsigned long k) { return Rational(ipow(BigInt(p), k)).inverse(); }

BigInt factorial(unsigned long n) {
  BigInt f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

HahnSeries mono(std::uint32_t p, std::int64_t c, const Rational& e) { return HahnSeries::monomial(p, c, e); }

// theta_k = sum_{i=1..k} t^(-1/p^i)
HahnSeries abhyankar_partial(std::uint32_t p, unsigned k) {
  HahnSeries s = HahnSeries::zero(p);
  for (unsigned i = 1; i <= k; ++i) s += mono(p, 1, -inv_pow(p, i));
  return s;
}

// sum_{i=from..to} t^(i!)
HahnSeries factorial_series(std::uint32_t p, unsigned from, unsigned to) {
  HahnSeries s = HahnSeries::zero(p);
  for (unsigned i = from; i <= to; ++i) s += mono(p, 1, Rational(factorial(i)));
  return s;
}

// X^p - X - a
HPoly as_poly(const HahnSeries& a) {
  const std::uint32_t p = a.characteristic();
  const HahnSeries one = HahnSeries::one(p);
  return HPoly::monomial(one, p) - HPoly::monomial(one, 1) - HPoly::constant(a);
}

// f(X + c)
HPoly compose_translate(const HPoly& f, const HahnSeries& c) {
  const HPoly shift = HPoly::variable(c.one_like()) + HPoly::constant(c);
  HPoly out(f.prototype());
  for (const auto& [i, a] : f.terms()) out = out + shift.pow(static_cast<unsigned long>(i)).scaled(a);
  return out;
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

class Recorder {
 public:
  explicit Recorder(ExampleReport& r) : r_(r) {}

  void equal(std::string name, std::string expected, const std::function<std::string()>& compute) {
    std::string computed;
    bool pass = false;
    try {
      computed = compute();
      pass = computed == expected;
    } catch (const std::exception& e) {
      computed = std::string("error: ") + e.what();
    }
    r_.checks.push_back({std::move(name), std::move(expected), std::move(computed), pass});
  }

  void holds(std::string name, const std::function<bool()>& predicate) {
    equal(std::move(name), "true", [&] { return bool_str(predicate()); });
  }

  void note(std::string text) { r_.notes.push_back(std::move(text)); }

  void defect(long n, long e, long f, long g) {
    const std::uint32_t p = r_.prime;
    equal("defect report n=" + std::to_string(n) + " e=" + std::to_string(e) + " f=" + std::to_string(f) +
              " g=" + std::to_string(g),
          "d=" + std::to_string(n / (e * f * g)), [&] {
            DefectReport d = defect_report(n, e, f, g, p);
            r_.defect = d;
            return "d=" + std::to_string(d.d);
          });
  }

  void evidence(const std::string& name, const std::vector<DistanceItem>& items, const Cut& claimed) {
    equal(name, "consistent", [&] {
      EvidenceReport ev = evidence_check({items, claimed});
      note(ev.summary);
      return std::string(ev.consistent ? "consistent" : "inconsistent");
    });
  }

  void classify(const Cut& c, const std::string& expected) {
    equal("classification of " + c.str(), expected, [&] {
      std::string verdict = to_string(classify_as_defect(c));
      r_.classification = Classification{c.str(), verdict};
      return verdict;
    });
  }

  // Asserted valuations must lie strictly below the precision cap.
  bool in_range(const Rational& exponent, const std::string& what) {
    if (exponent < cap_) return true;
    note(what + " = " + exponent.str() + " is not below the precision cap " + cap_.str() + "; check skipped");
    return false;
  }
  void set_cap(Rational cap) { cap_ = std::move(cap); }

 private:
  ExampleReport& r_;
  Rational cap_{0};
};

struct Context {
  std::uint32_t p;
  unsigned k;
  Rational prec;
  std::uint64_t seed;
  bool sabotage;
  Recorder& rec;
};

std::string root_vals(std::uint32_t p_mult, const Rational& v) {
  return "{" + v.str() + " x" + std::to_string(p_mult) + "}";
}

const char* kUniqueExtension =
    "g = 1 is declared, not computed: the valuation extends uniquely through purely inseparable and "
    "value-ramified steps of a henselian base";

// ---------------------------------------------------------------------------

void run_abhyankar(const Context& cx) {
  const std::uint32_t p = cx.p;
  Recorder& rec = cx.rec;
  const HahnSeries c = cx.sabotage ? mono(p, 1, -1) + HahnSeries::one(p) : mono(p, 1, -1);
  const HPoly f = as_poly(c);

  rec.equal("root valuations of X^p - X - 1/t", root_vals(p, -inv_pow(p, 1)),
            [&] { return render_root_valuations(newton_polygon(f)); });

  const Rational e = -inv_pow(p, cx.k);
  if (rec.in_range(e, "residual exponent"))
    rec.equal("theta_" + std::to_string(cx.k) + "^p - theta_" + std::to_string(cx.k) + " - 1/t", mono(p, -1, e).str(),
              [&] { return f.eval(abhyankar_partial(p, cx.k)).str(); });

  std::vector<DistanceItem> items;
  for (unsigned j = 1; j <= cx.k; ++j) {
    const Rational d = -inv_pow(p, j + 1);
    const std::string label = "v(theta_" + std::to_string(j + 1) + " - theta_" + std::to_string(j) + ")";
    if (!rec.in_range(d, label)) continue;
    rec.equal(label, d.str(), [&] {
      return (abhyankar_partial(p, j + 1) - abhyankar_partial(p, j)).valuation().str();
    });
    items.push_back({label, d});
  }
  const ValueGroup group = ValueGroup::localized(p);
  if (items.size() >= 2) rec.evidence("distances against lt:0", items, Cut::less_than(0, group));
  rec.classify(Cut::less_than(0, group), "Independent");
  rec.defect(p, 1, 1, 1);
  rec.note("theta = sum_{i>=1} t^(-1/p^i) has infinite support; only the partial sums theta_k are computed");
  rec.note(kUniqueExtension);
}

void run_ostrowski_t(const Context& cx) {
  const std::uint32_t p = cx.p;
  Recorder& rec = cx.rec;
  rec.note("the depth parameter does not affect this entry");
  if (p < 3) rec.note("for p = 2 the degree-(p-1) step is trivial and b = t");
  const Rational vb(1, long(p) - 1);
  const HahnSeries b = mono(p, 1, vb);
  const HahnSeries t = mono(p, 1, 1);
  const HahnSeries one = HahnSeries::one(p);
  const HahnSeries constant = cx.sabotage ? one + one : one;
  // X^p - t X - 1
  const HPoly f = HPoly::monomial(one, p) - HPoly::monomial(t, 1) - HPoly::constant(constant);
  const Rational wp = cx.prec;

  rec.holds("b^(p-1) = t", [&] { return b.pow(p - 1) == t; });
  const HahnSeries b_inv = b.inverse(wp);
  const HahnSeries a = b.pow(p).inverse(wp);
  rec.equal("b^(-p) f(bX)", as_poly(a).str(), [&] { return as_scale(f, b, wp).str(); });
  rec.equal("translate X -> X + 1/b", as_poly(b_inv).str(),
            [&] { return compose_translate(as_scale(f, b, wp), b_inv).str(); });
  rec.equal("as_translate(1/b^p, 1/b)", b_inv.str(), [&] { return as_translate(a, b_inv).str(); });
  rec.equal("v(b)", vb.str(), [&] { return b.valuation().str(); });
  rec.equal("(vF_p(b) : vF_p(t))", std::to_string(p - 1), [&] { return (Rational(1) / vb).str(); });
  rec.holds("v(b) not divisible by p in Z/(p-1)",
            [&] { return !ValueGroup::cyclic(vb).contains(b.valuation().value() / Rational(long(p))); });
  rec.equal("root valuations of X^p - X - 1/b", root_vals(p, -vb / Rational(long(p))),
            [&] { return render_root_valuations(newton_polygon(compose_translate(as_scale(f, b, wp), b_inv))); });
}

void run_as_tower(const Context& cx) {
  const std::uint32_t p = cx.p;
  Recorder& rec = cx.rec;
  std::optional<HahnSeries> c;
  if (cx.sabotage) c = mono(p, 1, -1) + HahnSeries::one(p);
  std::optional<Tower> tower;
  rec.holds("tower of height " + std::to_string(cx.k) + " accepted", [&] {
    tower = build_as_tower(p, cx.k, Rational(8), c);
    return true;
  });
  if (!tower) return;
  const Tower& tw = *tower;

  rec.equal("value group index", ipow(BigInt(p), cx.k).get_str(), [&] { return tw.value_group_index().get_str(); });
  std::vector<TowerElement> eta;
  eta.push_back(tw.zero());
  for (std::size_t j = 1; j <= cx.k; ++j) eta.push_back(eta.back() + tw.generator(j));

  std::vector<DistanceItem> items;
  for (std::size_t j = 1; j <= cx.k; ++j) {
    const std::string js = std::to_string(j);
    rec.equal("v(a_" + js + ")", (-inv_pow(p, j)).str(), [&] { return tw.generator(j).valuation().str(); });
    rec.equal("v(eta_" + js + ")", (-inv_pow(p, 1)).str(), [&] { return eta[j].valuation().str(); });
    std::optional<AsTowerIdentityReport> id;
    rec.holds("eta_" + js + "^p - 1/t = a_" + js, [&] {
      id = as_tower_identity_check(tw, j);
      return id->holds;
    });
    if (id && id->holds) {
      rec.equal("v(eta - eta_" + js + ") = v(a_" + js + ")/p", (-inv_pow(p, j + 1)).str(),
                [&] { return id->distance.str(); });
      items.push_back({"v(eta - eta_" + js + ")", id->distance});
    }
    for (std::size_t i = 1; i < j; ++i)
      rec.equal("v(eta_" + js + " - eta_" + std::to_string(i) + ")", (-inv_pow(p, i + 1)).str(),
                [&] { return (eta[j] - eta[i]).valuation().str(); });
  }
  if (items.size() >= 2) rec.evidence("distances against lt:0", items, Cut::less_than(0, ValueGroup::localized(p)));
  rec.defect(p, 1, 1, 1);
  rec.note("eta^p = 1/t; from a_1^p = a_1 + 1/t and a_{i+1}^p = a_{i+1} - a_i one gets eta_k^p = a_k + 1/t, "
           "so (eta - eta_k)^p = -a_k; the sign is immaterial for p = 2 and for the valuation");
  rec.note(kUniqueExtension);
}

void run_transform(const Context& cx) {
  const std::uint32_t p = cx.p;
  Recorder& rec = cx.rec;
  const Rational vb = inv_pow(p, 1);
  const HahnSeries b = mono(p, 1, vb);
  const HahnSeries d = b.pow(p - 1);
  const HahnSeries one = HahnSeries::one(p);
  const HahnSeries inv_t = mono(p, 1, -1);
  // X^p - d X - 1/t
  const HPoly f = HPoly::monomial(one, p) - HPoly::monomial(d, 1) - HPoly::constant(inv_t);
  const Rational v0 = -inv_pow(p, 1);

  rec.holds("v(d) >= 1/p", [&] { return d.valuation().value() >= vb; });
  rec.equal("root valuations of X^p - dX - 1/t", root_vals(p, v0),
            [&] { return render_root_valuations(newton_polygon(f)); });
  rec.holds("v(d) + v(theta_0) >= 0", [&] { return d.valuation().value() + v0 >= 0; });
  rec.equal("b^(-p) f(bX)", as_poly(inv_t * b.pow(p).inverse(cx.prec)).str(),
            [&] { return as_scale(f, b, cx.prec).str(); });
  rec.holds("v(b) > 0", [&] { return b.valuation().value() > 0; });

  const ValueGroup group = ValueGroup::localized(p);
  const Cut cut = Cut::less_than(-vb, group);
  // v(theta_0 - c) = v(eta - c) for c in L, so the distances of theta_0/b are those of eta shifted by -v(b)
  std::vector<DistanceItem> items;
  rec.holds("tower distances v(eta - eta_j) for j <= " + std::to_string(cx.k), [&] {
    Tower tw = build_as_tower(p, cx.k, Rational(8));
    for (std::size_t j = 1; j <= cx.k; ++j) {
      AsTowerIdentityReport id = as_tower_identity_check(tw, j);
      if (!id.holds) return false;
      items.push_back({"v(theta_0/b - eta_" + std::to_string(j) + "/b)", id.distance - vb});
    }
    return true;
  });
  if (items.size() >= 2) rec.evidence("shifted distances against lt:-v(b)", items, cut);
  rec.equal("lt:-v(b) + lt:-v(b)", Cut::less_than(-vb * Rational(2), group).str(),
            [&] { return cut_add(cut, cut).str(); });
  rec.holds("lt:-v(b) is not idempotent", [&] { return !is_idempotent(cut); });
  rec.classify(cut, "Dependent");
  rec.defect(p, 1, 1, 1);
  rec.note("b = t^(1/p) is a stand-in with v(b) > 0 inside F_p((t^Q)); the construction takes b in the "
           "Artin-Schreier tower field");
  rec.note("sign of the final cut: the distance set of theta_0/b is stated as {a in vL : a < vb}, but distances of "
           "an Artin-Schreier defect generator must be negative and translating (vL)^{<0} by -vb gives "
           "{a < -vb}; the classifier is run on lt:-v(b)");
}

void run_fks(const Context& cx) {
  const std::uint32_t p = cx.p;
  Recorder& rec = cx.rec;
  const HahnSeries s = factorial_series(p, 1, cx.k + 1);
  std::vector<DistanceItem> items;
  for (unsigned j = 1; j <= cx.k; ++j) {
    const Rational d(factorial(j + 1));
    const std::string label = "v(s - c_" + std::to_string(j) + ")";
    if (!rec.in_range(d, label)) continue;
    rec.equal(label, d.str(), [&] { return (s - factorial_series(p, 1, j)).valuation().str(); });
    items.push_back({label, d});
  }
  if (items.size() >= 2) rec.evidence("distances against all", items, Cut::all(ValueGroup::rationals()));
  rec.holds("s^p = frobenius(s)", [&] { return s.pow(p) == s.frobenius(); });
  rec.defect(p, 1, 1, 1);
  rec.note("s = sum_{i>=1} t^(i!) stands in for an element transcendental over F_p(t); transcendence is assumed, "
           "not checked; the sum is truncated after i = k + 1");
  rec.note("distances lie in vF_p(t) = Z, which is discrete; they are recorded inside Q for the evidence check");
  rec.note(kUniqueExtension);
}

long gcd_of_values(const std::vector<Rational>& values) {
  BigInt g = 0;
  for (const auto& v : values) {
    if (!v.is_integer()) throw std::invalid_argument("value " + v.str() + " is not an integer");
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.num().get_mpz_t());
  }
  return g.get_si();
}

void run_lifted_defect(const Context& cx) {
  const std::uint32_t p = cx.p;
  Recorder& rec = cx.rec;
  const Rational P{long(p)};
  const HahnSeries t = mono(p, 1, 1);
  const HahnSeries s = factorial_series(p, 2, cx.k + 2);
  rec.holds("v(s) > v(t) = 1", [&] { return s.valuation().value() > t.valuation().value(); });
  rec.equal("v(t + s)", "1", [&] { return (t + s).valuation().str(); });

  auto vs = [&] { return s.valuation().value(); };
  auto base_group = [&] { return gcd_of_values({t.pow(p).valuation().value(), s.pow(p).valuation().value()}); };
  rec.equal("generator of vF_p(t^p, s^p)", std::to_string(p), [&] { return std::to_string(base_group()); });
  rec.equal("(vF_p(t, s^p) : vF_p(t^p, s^p))", std::to_string(p), [&] {
    return std::to_string(base_group() / gcd_of_values({t.valuation().value(), P * vs()}));
  });
  rec.equal("(vF_p(t + s, s^p) : vF_p(t^p, s^p))", std::to_string(p), [&] {
    return std::to_string(base_group() / gcd_of_values({(t + s).valuation().value(), P * vs()}));
  });
  rec.holds("F_p(t, s^p) | F_p(t^p, s^p) defectless", [&] { return defect_report(p, p, 1, 1, p).defectless(); });
  rec.holds("F_p(t + s, s^p) | F_p(t^p, s^p) defectless", [&] { return defect_report(p, p, 1, 1, p).defectless(); });
  rec.equal("defect of F_p(t, s) | F_p(t^p, s^p)", std::to_string(p),
            [&] { return std::to_string(defect_report(long(p) * p, p, 1, 1, p).d); });
  rec.holds("product formula d(M|K) = d(M|L) d(L|K)", [&] { return defect_product_check(p, p, 1, p); });
  rec.defect(p, 1, 1, 1);
  rec.note("the defect report concerns the lifted extension F_p(t, s) | F_p(t + s, s^p)");
  rec.note("s = sum_{i>=2} t^(i!) is a transcendence stand-in with v(s) > 1; algebraic independence is assumed");
  rec.note(kUniqueExtension);
}

// Rank-2 value (z-component, t-component), ordered lexicographically.
struct Lex2 {
  Rational z;
  Rational t;
  Lex2 operator-(const Lex2& o) const { return {z - o.z, t - o.t}; }
  Lex2 operator-() const { return {-z, -t}; }
  Lex2 operator*(long n) const { return {z * Rational(n), t * Rational(n)}; }
  Lex2 operator/(long n) const { return {z / Rational(n), t / Rational(n)}; }
  friend bool operator==(const Lex2&, const Lex2&) = default;
  friend bool operator<(const Lex2& a, const Lex2& b) { return a.z < b.z || (a.z == b.z && a.t < b.t); }
  std::string str() const { return "(" + z.str() + "," + t.str() + ")"; }
};

void run_dirty_trick(const Context& cx) {
  const std::uint32_t p = cx.p;
  Recorder& rec = cx.rec;
  const HahnSeries s = factorial_series(p, 1, cx.k + 1);
  const Lex2 vz{1, 0};
  const Lex2 vs{0, s.valuation().value()};

  std::vector<DistanceItem> items;
  bool bounded = true;
  for (unsigned j = 1; j <= cx.k; ++j) {
    const Rational d(factorial(j + 1));
    const std::string label = "v(s - c_" + std::to_string(j) + ")";
    rec.equal(label, Lex2{0, d}.str(), [&] {
      return Lex2{0, (s - factorial_series(p, 1, j)).valuation().value()}.str();
    });
    bounded = bounded && Lex2{0, d} < vz;
    items.push_back({label, d});
  }
  rec.holds("every distance lies below v(z) = (1,0)", [&] { return bounded; });
  if (items.size() >= 2) rec.evidence("t-projection of the distances", items, Cut::all(ValueGroup::rationals()));
  // X^p - z^(p-1) X - s^p
  std::vector<std::pair<long, Lex2>> points{{0, Lex2{0, vs.t * Rational(long(p))}},
                                            {1, vz * long(p - 1)},
                                            {long(p), Lex2{0, 0}}};
  rec.equal("root valuations of X^p - z^(p-1) X - s^p", "{" + vs.str() + " x" + std::to_string(p) + "}",
            [&] { return render_root_valuations(lower_hull(points)); });
  rec.defect(p, 1, 1, 1);
  rec.note("value group Z x Z ordered lexicographically, written (z-component, t-component) with v(s) >> v(t) "
           "realized as v(z) = (1,0) above every t-value; the cut is checked on the t-projection");
  rec.note("s = sum t^(i!) is a transcendence stand-in, truncated after i = k + 1");
}

void run_qp_radical(const Context& cx) {
  const std::uint32_t p = cx.p;
  Recorder& rec = cx.rec;
  const Rational prec = cx.prec;
  auto a = [&](unsigned i) { return RamifiedPadic::monomial(p, 1, -inv_pow(p, i), prec); };

  rec.holds("a_1^p = 1/p", [&] { return a(1).pow(p).agrees_with(RamifiedPadic::from_rational(p, inv_pow(p, 1), prec)); });
  std::vector<RamifiedPadic> as;
  std::vector<DistanceItem> items;
  for (unsigned j = 1; j <= cx.k; ++j) {
    const std::string js = std::to_string(j);
    as.push_back(a(j));
    rec.equal("v(a_" + js + ")", (-inv_pow(p, j)).str(), [&] { return a(j).valuation().str(); });
    rec.holds("a_" + std::to_string(j + 1) + "^p = a_" + js, [&] { return a(j + 1).pow(p).agrees_with(a(j)); });
    std::optional<Rational> res;
    rec.equal("v(theta_" + js + "^p - theta_" + js + " - 1/p)", (-inv_pow(p, j)).str(), [&] {
      res = qp_tower_residual(p, j, prec).valuation;
      return res->str();
    });
    if (res) items.push_back({"v(b_" + js + ") = v(residual_" + js + ")/p", *res / Rational(long(p))});
  }
  rec.holds("quasi-additivity on {a_1, ..., a_k}", [&] { return quasi_additivity_check(as).holds; });
  if (items.size() >= 2) rec.evidence("distances against lt:0", items, Cut::less_than(0, ValueGroup::localized(p)));
  rec.defect(p, 1, 1, 1);
  rec.note("theta, a root of X^p - X - 1/p, has no finite digit expansion; v(theta - theta_k) = v(b_k) is "
           "derived from the residual via b_k^p - b_k = -(residual) modulo the valuation ring");
  rec.note(kUniqueExtension);
}

void run_sqrt(const Context& cx, long constant, const std::string& name, const std::string& target) {
  Recorder& rec = cx.rec;
  const std::uint32_t p = cx.p;
  auto q = [&](const Rational& x) { return VpRational(p, x); };
  const QPoly f({q(constant), q(0), q(1)});
  const QPoly expected({q(Rational(constant + 1, 4)), q(-1), q(1)});
  rec.equal("(1/4) (" + name + ")(1 - 2X)", target, [&] { return subst_affine(f, 1, -2, 4).str(); });
  rec.holds("matches X^2 - X + (1 + c)/4", [&] { return subst_affine(f, 1, -2, 4) == expected; });
  rec.holds("4 g(x) = f(1 - 2x) for x in {-3..3}", [&] {
    QPoly g = subst_affine(f, 1, -2, 4);
    for (long x = -3; x <= 3; ++x)
      if (!(g.eval(q(x)) * q(4) == f.eval(q(Rational(1) - Rational(2 * x))))) return false;
    return true;
  });
  rec.equal("root valuations under v_2", root_vals(2, Rational(-1, 2)),
            [&] { return render_root_valuations(newton_polygon(subst_affine(f, 1, -2, 4))); });
  rec.defect(2, 1, 1, 1);
  rec.note("the depth parameter does not affect this entry");
  rec.note("the root value -1/2 = -vp/p places this polynomial in the Q_2 radical tower setting; the defect "
           "report concerns the extension over the tower field");
}

void run_quasi_add(const Context& cx) {
  const std::uint32_t p = cx.p;
  Recorder& rec = cx.rec;
  const unsigned depth = cx.k;
  const Rational prec(2);
  const long scale = ipow(BigInt(p), depth).get_si();
  const long lo = -(scale / long(p));
  const long hi = 2 * scale - 1;
  std::mt19937_64 rng(cx.seed);
  auto draw = [&](long a, long b) { return a + long(rng() % std::uint64_t(b - a + 1)); };

  const int trials = 200;
  int held = 0;
  std::optional<Rational> min_witness;
  std::string first_error;
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<RamifiedPadic> cs;
    long n = draw(2, 4);
    for (long i = 0; i < n; ++i) {
      RamifiedPadic x = RamifiedPadic::zero_to(p, prec);
      long digits = draw(1, 5);
      for (long j = 0; j < digits; ++j)
        x += RamifiedPadic::monomial(p, draw(1, long(p) - 1), Rational(draw(lo, hi), scale), prec);
      cs.push_back(x);
    }
    try {
      QuasiAdditivityReport r = quasi_additivity_check(cs);
      if (r.holds) ++held;
      if (r.witness.is_exact() && (!min_witness || r.witness.value() < *min_witness)) min_witness = r.witness.value();
    } catch (const std::exception& e) {
      if (first_error.empty()) first_error = e.what();
    }
  }
  rec.equal("trials with (sum c_i)^p - sum c_i^p in O", std::to_string(trials) + "/" + std::to_string(trials),
            [&] { return std::to_string(held) + "/" + std::to_string(trials); });
  if (!first_error.empty()) rec.note("first error: " + first_error);
  if (min_witness) rec.note("smallest exact witness valuation: " + min_witness->str());
  rec.note("elements are random digit expansions in (1/p^k)Z with value >= -1/p, working precision 2");
}

// ---------------------------------------------------------------------------

struct Entry {
  ExampleInfo info;
  unsigned default_depth;
  unsigned min_depth;
  unsigned max_depth;
  std::uint32_t max_prime;
  bool sabotage_hook;
  std::function<Rational(std::uint32_t, unsigned)> default_precision;
  std::function<void(const Context&)> run;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {{"fks", "purely inseparable defect", "F_p(t,s) | F_p(t,s^p) is immediate of degree p, so d = p"},
       5, 1, 8, 97, false,
       [](std::uint32_t, unsigned k) { return Rational(factorial(k + 1)) + Rational(1); }, run_fks},
      {{"lifted_defect", "defect created by lifting", "two defectless degree-p extensions compose to a defect extension"},
       5, 1, 8, 97, false, [](std::uint32_t, unsigned) { return Rational(1); }, run_lifted_defect},
      {{"abhyankar", "independent Artin-Schreier defect",
        "theta = sum t^(-1/p^i) solves X^p - X - 1/t; distance cut (vL)^{<0}"},
       5, 1, 8, 13, true, [](std::uint32_t, unsigned) { return Rational(0); }, run_abhyankar},
      {{"ostrowski_t", "Artin-Schreier normal form", "X^p - tX - 1 becomes X^p - X - 1/b with b^(p-1) = t"},
       5, 1, 8, 13, true, [](std::uint32_t, unsigned) { return Rational(4); }, run_ostrowski_t},
      {{"as_tower", "purely inseparable defect over an Artin-Schreier tower",
        "eta^p = 1/t over the tower a_1^p - a_1 = 1/t, a_{i+1}^p - a_{i+1} = -a_i"},
       5, 1, 6, 5, true, [](std::uint32_t, unsigned) { return Rational(0); }, run_as_tower},
      {{"transform", "dependent Artin-Schreier defect", "X^p - b^(p-1)X - 1/t rescales to an Artin-Schreier polynomial"},
       5, 1, 6, 5, false, [](std::uint32_t, unsigned) { return Rational(4); }, run_transform},
      {{"dirty_trick", "defect with rank-2 value group", "X^p - z^(p-1)X - s^p with distances bounded by vz"},
       5, 1, 8, 97, false, [](std::uint32_t, unsigned) { return Rational(0); }, run_dirty_trick},
      {{"qp_radical", "mixed-characteristic defect", "X^p - X - 1/p over Q_p(p^(1/p^i) : i)"},
       5, 1, 6, 5, false, [](std::uint32_t, unsigned) { return Rational(2); }, run_qp_radical},
      {{"sqrt3", "mixed-characteristic defect, p = 2", "Y = 1 - 2X turns Y^2 - 3 into X^2 - X - 1/2"},
       5, 1, 8, 2, false, [](std::uint32_t, unsigned) { return Rational(0); },
       [](const Context& cx) { run_sqrt(cx, -3, "Y^2 - 3", "X^2 + (-1)*X + (-1/2)"); }},
      {{"sqrt_minus1", "mixed-characteristic defect, p = 2", "Y = 1 - 2X turns Y^2 + 1 into X^2 - X + 1/2"},
       5, 1, 8, 2, false, [](std::uint32_t, unsigned) { return Rational(0); },
       [](const Context& cx) { run_sqrt(cx, 1, "Y^2 + 1", "X^2 + (-1)*X + (1/2)"); }},
      {{"quasi_add", "quasi-additivity of p-th powers", "(sum c_i)^p = sum c_i^p mod O when v(c_i) >= -vp/p"},
       2, 1, 3, 7, false, [](std::uint32_t, unsigned) { return Rational(2); }, run_quasi_add},
  };
  return entries;
}

}  // namespace

bool ExampleReport::passed() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return !checks.empty();
}

std::vector<ExampleInfo> list_examples() {
  std::vector<ExampleInfo> out;
  for (const auto& e : registry()) out.push_back(e.info);
  return out;
}

ExampleReport run_example(const std::string& id, const ExampleParams& params) {
  const Entry* entry = nullptr;
  for (const auto& e : registry())
    if (e.info.id == id) entry = &e;
  if (!entry) throw std::invalid_argument("unknown example '" + id + "'");
  if (!is_prime(params.p)) throw std::invalid_argument(std::to_string(params.p) + " is not prime");
  if (params.p > entry->max_prime)
    throw std::invalid_argument("example '" + id + "' supports primes up to " + std::to_string(entry->max_prime));
  if (id.rfind("sqrt", 0) == 0 && params.p != 2) throw std::invalid_argument("example '" + id + "' needs p = 2");
  const unsigned k = params.depth.value_or(entry->default_depth);
  if (k < entry->min_depth || k > entry->max_depth)
    throw std::invalid_argument("depth for '" + id + "' must lie in [" + std::to_string(entry->min_depth) + ", " +
                                std::to_string(entry->max_depth) + "]");
  if (params.sabotage && !entry->sabotage_hook)
    throw std::invalid_argument("example '" + id + "' has no sabotage hook");
  const Rational prec = params.precision.value_or(entry->default_precision(params.p, k));
  if ((id == "qp_radical" || id == "quasi_add") && prec.sign() <= 0)
    throw std::invalid_argument("p-adic working precision must be positive");

  ExampleReport report{id, params.p, k, prec.str(), params.seed, params.sabotage, {}, std::nullopt, std::nullopt, {}};
  Recorder rec(report);
  rec.set_cap(prec);
  if (params.sabotage) rec.note("negative control: Artin-Schreier constant perturbed by +1");
  entry->run(Context{params.p, k, prec, params.seed, params.sabotage, rec});
  return report;
}

namespace {

nlohmann::json report_json(const ExampleReport& r) {
  nlohmann::json j;
  j["id"] = r.id;
  j["prime"] = r.prime;
  j["parameters"] = {{"depth", r.depth}, {"precision", r.precision}, {"seed", r.seed}, {"sabotage", r.sabotaged}};
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"expected", c.expected}, {"computed", c.computed}, {"pass", c.pass}});
  j["checks"] = checks;
  if (r.defect)
    j["defect_report"] = {{"n", r.defect->n}, {"e", r.defect->e}, {"f", r.defect->f}, {"g", r.defect->g},
                          {"d", r.defect->d}};
  else
    j["defect_report"] = nullptr;
  if (r.classification)
    j["classification"] = {{"cut", r.classification->cut}, {"verdict", r.classification->verdict}};
  else
    j["classification"] = nullptr;
  j["notes"] = r.notes;
  j["pass"] = r.passed();
  return j;
}

}  // namespace

std::string to_json(const ExampleReport& report) { return report_json(report).dump(2); }

std::string to_json(const std::vector<ExampleReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) arr.push_back(report_json(r));
  return arr.dump(2);
}

std::string to_text(const ExampleReport& r) {
  std::string out = r.id + " (p = " + std::to_string(r.prime) + ", k = " + std::to_string(r.depth) +
                    ", precision " + r.precision + "): " + (r.passed() ? "PASS" : "FAIL") + "\n";
  for (const auto& c : r.checks) {
    out += std::string("  [") + (c.pass ? "ok" : "FAIL") + "] " + c.name + ": " + c.computed;
    if (!c.pass) out += " (expected " + c.expected + ")";
    out += "\n";
  }
  if (r.defect) out += "  defect: " + r.defect->str() + "\n";
  if (r.classification) out += "  classification: " + r.classification->cut + " -> " + r.classification->verdict + "\n";
  for (const auto& n : r.notes) out += "  note: " + n + "\n";
  return out;
}

std::vector<ValuedPoly<HahnSeries>> catalog_polynomials(std::uint32_t p) {
  const HahnSeries one = HahnSeries::one(p);
  const HahnSeries t = mono(p, 1, 1);
  std::vector<HPoly> out;
  out.push_back(as_poly(mono(p, 1, -1)));
  out.push_back(HPoly::monomial(one, p) - HPoly::monomial(t, 1) - HPoly::constant(one));
  const HahnSeries b = mono(p, 1, Rational(1, long(p) - 1));
  out.push_back(as_poly(b.pow(p).inverse(8)));
  out.push_back(as_poly(b.inverse(8)));
  const HahnSeries bt = mono(p, 1, inv_pow(p, 1));
  out.push_back(HPoly::monomial(one, p) - HPoly::monomial(bt.pow(p - 1), 1) - HPoly::constant(mono(p, 1, -1)));
  out.push_back(as_poly(mono(p, 1, -2)));
  out.push_back(as_poly(t));
  out.push_back(as_poly(t + mono(p, 1, Rational(3, 2))));
  if (p != 2) out.push_back(HPoly::monomial(one, 2) - HPoly::constant(one + t));
  return out;
}

}  // namespace defekt
