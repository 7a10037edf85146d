#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "defekt/catalog.hpp"
#include "defekt/cuts.hpp"
#include "defekt/evaluate.hpp"
#include "defekt/expr.hpp"
#include "defekt/newton_polygon.hpp"
#include "defekt/poly.hpp"
#include "defekt/prime_field.hpp"

using json = nlohmann::json;
using namespace defekt;

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Options {
  std::uint32_t p = 2;
  std::optional<std::string> prec;
  std::optional<unsigned> depth;
  bool json = false;
  std::uint64_t seed = 0;
};

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

Rational working_precision(const Options& o) {
  if (o.prec) return Rational::parse(*o.prec);
  if (const char* env = std::getenv("DEFEKT_PREC_DEFAULT"); env && *env) return Rational::parse(env);
  return Rational(10);
}

EvalConfig eval_config(const Options& o) { return {o.p, working_precision(o)}; }

bool mentions_x(const expr::Node& n) {
  if (n.kind == expr::Kind::Var) return true;
  for (const auto& c : n.children)
    if (mentions_x(c)) return true;
  return false;
}

std::string domain_name(Domain d) { return d == Domain::Padic ? "padic" : "series"; }

int cmd_eval(const Options& o, const std::string& src) {
  const expr::Node ast = expr::parse(src);
  if (mentions_x(ast)) throw std::invalid_argument("eval takes an expression without X; use np or lift for polynomials");
  const EvalConfig cfg = eval_config(o);
  const EvalValue v = evaluate(ast, cfg);
  if (o.json) {
    emit({{"domain", domain_name(detect_domain(ast))},
          {"expression", expr::print(ast)},
          {"kind", v.is_valuation() ? "valuation" : "element"},
          {"precision", cfg.precision.str()},
          {"prime", o.p},
          {"value", v.str()}});
  } else {
    std::cout << v.str() << "\n";
  }
  return kOk;
}

template <class C>
json polygon_json(const ValuedPoly<C>& f, const NewtonPolygon& np) {
  json vertices = json::array(), segments = json::array(), roots = json::array();
  for (const auto& v : np.vertices) vertices.push_back({{"index", v.index}, {"value", v.value.str()}});
  for (const auto& s : np.segments) segments.push_back({{"length", s.length}, {"slope", s.slope.str()}});
  for (const auto& r : np.root_valuations())
    roots.push_back({{"multiplicity", r.multiplicity}, {"valuation", r.valuation.str()}});
  return {{"polynomial", f.str()}, {"root_valuations", roots}, {"segments", segments}, {"vertices", vertices}};
}

template <class C>
int print_polygon(const Options& o, const ValuedPoly<C>& f) {
  if (f.degree() < 1) throw std::invalid_argument("np needs a polynomial of degree >= 1 in X");
  const NewtonPolygon np = newton_polygon(f);
  if (o.json) {
    json j = polygon_json(f, np);
    j["prime"] = o.p;
    emit(j);
    return kOk;
  }
  std::cout << "polynomial: " << f.str() << "\n";
  std::cout << "vertices:";
  for (const auto& v : np.vertices) std::cout << " (" << v.index << ", " << v.value.str() << ")";
  std::cout << "\nroot valuations: " << render_root_valuations(np) << "\n";
  return kOk;
}

int cmd_np(const Options& o, const std::string& src) {
  const expr::Node ast = expr::parse(src);
  const EvalConfig cfg = eval_config(o);
  if (detect_domain(ast) == Domain::Padic) return print_polygon(o, evaluate_padic_poly(ast, cfg));
  return print_polygon(o, evaluate_series_poly(ast, cfg));
}

template <class C>
int lift_in(const Options& o, const ValuedPoly<C>& f, const C& start, const Rational& target) {
  if (f.degree() < 1) throw std::invalid_argument("lift needs a polynomial of degree >= 1 in X");
  const HenselResult<C> r = hensel_lift(f, start, target);
  const NewtonPolygon np = newton_polygon(f);
  const Valuation vr = r.root.valuation();
  // a root that vanishes to the working precision cannot be matched against a slope
  const bool certified = vr.is_exact() ? np.certifies(vr.value()) : !np.segments.empty();
  if (o.json) {
    emit({{"certified", certified},
          {"classical", r.classical},
          {"iterations", r.iterations},
          {"polynomial", f.str()},
          {"precision", target.str()},
          {"prime", o.p},
          {"residual", r.residual.str()},
          {"root", r.root.str()},
          {"root_valuation", vr.str()},
          {"start", start.str()}});
  } else {
    std::cout << "root: " << r.root.str() << "\n"
              << "v(root): " << vr.str() << (certified ? " (certified by the Newton polygon)" : " (NOT certified)")
              << "\n"
              << "v(f(root)): " << r.residual.str() << "\n"
              << "iterations: " << r.iterations << (r.classical ? ", classical hypothesis" : ", refined hypothesis")
              << "\n";
  }
  return certified ? kOk : kFailed;
}

int cmd_lift(const Options& o, const std::string& poly_src, const std::string& start_src) {
  const expr::Node f_ast = expr::parse(poly_src);
  const expr::Node b_ast = expr::parse(start_src);
  if (mentions_x(b_ast)) throw std::invalid_argument("the start point must not contain X");
  const EvalConfig cfg = eval_config(o);
  const Domain df = detect_domain(f_ast), db = detect_domain(b_ast);
  const bool padic = df == Domain::Padic || db == Domain::Padic;
  if (padic) {
    // p-adic literals carry the working precision; each Newton step divides
    // by f'(x), so the literals need 2 v(f'(b)) extra digits
    EvalConfig wide = cfg;
    const auto f0 = evaluate_padic_poly(f_ast, cfg);
    const Valuation vd = f0.derivative().eval(evaluate_padic_poly(b_ast, cfg).coeff(0)).valuation();
    if (vd.is_exact() && vd.value() > Rational(0)) wide.precision = cfg.precision + vd.value() * Rational(2) + Rational(1);
    const auto f = evaluate_padic_poly(f_ast, wide);
    return lift_in(o, f, evaluate_padic_poly(b_ast, wide).coeff(0), cfg.precision);
  }
  const auto f = evaluate_series_poly(f_ast, cfg);
  return lift_in(o, f, evaluate_series_poly(b_ast, cfg).coeff(0), cfg.precision);
}

int cmd_classify(const Options& o, const std::string& literal) {
  const Cut c = Cut::parse(literal, ValueGroup::rationals());
  const DefectType t = classify_as_defect(c);
  if (o.json)
    emit({{"cut", c.str()}, {"idempotent", is_idempotent(c)}, {"verdict", to_string(t)}});
  else
    std::cout << to_string(t) << "\n";
  return kOk;
}

int cmd_evidence(const Options& o, const std::string& path, const std::string& literal) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read evidence file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const Cut claimed = Cut::parse(literal, ValueGroup::rationals());
  const EvidenceReport r = evidence_check({parse_distance_items(buf.str()), claimed});
  if (o.json) {
    emit({{"consistent", r.consistent},
          {"count", r.count},
          {"cut", claimed.str()},
          {"last_gap", r.last_gap ? json(r.last_gap->str()) : json(nullptr)},
          {"summary", r.summary}});
  } else {
    std::cout << r.summary << "\n";
  }
  return r.consistent ? kOk : kFailed;
}

ExampleParams example_params(const Options& o, bool sabotage) {
  ExampleParams params;
  params.p = o.p;
  params.depth = o.depth;
  if (o.prec) params.precision = Rational::parse(*o.prec);
  params.seed = o.seed;
  params.sabotage = sabotage;
  return params;
}

int cmd_example(const Options& o, const std::string& id, bool all, bool sabotage) {
  const ExampleParams params = example_params(o, sabotage);
  if (!all) {
    if (id.empty()) throw std::invalid_argument("example needs an id or --all");
    const ExampleReport r = run_example(id, params);
    std::cout << (o.json ? to_json(r) + "\n" : to_text(r));
    return r.passed() ? kOk : kFailed;
  }
  if (!id.empty()) throw std::invalid_argument("give either an id or --all, not both");

  std::vector<std::pair<std::string, std::future<ExampleReport>>> jobs;
  for (const auto& info : list_examples())
    jobs.emplace_back(info.id, std::async(std::launch::async, [id = info.id, params] { return run_example(id, params); }));
  std::vector<ExampleReport> reports;
  std::vector<std::string> skipped;
  for (auto& [name, job] : jobs) {
    try {
      reports.push_back(job.get());
    } catch (const std::invalid_argument& e) {
      skipped.push_back(name + ": " + e.what());
    }
  }
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.passed();
  if (o.json) {
    std::cout << to_json(reports) << "\n";
  } else {
    for (const auto& r : reports) std::cout << to_text(r);
    for (const auto& s : skipped) std::cout << "skipped " << s << "\n";
  }
  for (const auto& s : skipped)
    if (o.json) std::cerr << "skipped " << s << "\n";
  return ok ? kOk : kFailed;
}

int cmd_list(const Options& o) {
  const auto infos = list_examples();
  if (o.json) {
    json arr = json::array();
    for (const auto& i : infos) arr.push_back({{"id", i.id}, {"summary", i.summary}, {"topic", i.topic}});
    emit(arr);
    return kOk;
  }
  std::size_t width = 0;
  for (const auto& i : infos) width = std::max(width, i.id.size());
  for (const auto& i : infos)
    std::cout << i.id << std::string(width - i.id.size() + 2, ' ') << i.topic << ": " << i.summary << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"defekt: exact computation in valued fields and Artin-Schreier defect examples"};
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("-p,--prime", o.p, "characteristic / residue characteristic (default 2)");
  app.add_option("--prec", o.prec, "working precision as a rational (default $DEFEKT_PREC_DEFAULT or 10)");
  app.add_option("-k,--depth", o.depth, "tower depth for catalog examples");
  app.add_flag("--json", o.json, "machine-readable output with sorted keys");
  app.add_option("--seed", o.seed, "seed for randomized checks");

  std::string expr_src, poly_src, start_src, cut_literal, example_id, evidence_path;
  bool all = false, sabotage = false;

  auto* eval = app.add_subcommand("eval", "evaluate an expression in F_p((t^Q)) or a ramified p-adic field");
  eval->add_option("expr", expr_src, "expression")->required();
  auto* np = app.add_subcommand("np", "Newton polygon and certified root valuations of a polynomial in X");
  np->add_option("poly", poly_src, "polynomial in X")->required();
  auto* lift = app.add_subcommand("lift", "Hensel/Newton lifting of a root to precision --prec");
  lift->add_option("poly", poly_src, "polynomial in X")->required();
  lift->add_option("start", start_src, "approximate root")->required();
  auto* classify = app.add_subcommand("classify", "dependent/independent type from a distance cut");
  classify->add_option("cut", cut_literal, "empty | lt:q | le:q | all")->required();
  auto* example = app.add_subcommand("example", "run a catalog example");
  example->add_option("id", example_id, "example id (see list)");
  example->add_flag("--all", all, "run every example");
  example->add_flag("--sabotage", sabotage, "perturb the input; the example must then fail");
  auto* list = app.add_subcommand("list", "list catalog examples");
  auto* evidence = app.add_subcommand("evidence", "check a JSON distance-evidence file against a claimed cut");
  evidence->add_option("file", evidence_path, "JSON array of {label, distance}")->required();
  evidence->add_option("--cut", cut_literal, "claimed cut")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    checked_prime(o.p);
    if (*eval) return cmd_eval(o, expr_src);
    if (*np) return cmd_np(o, poly_src);
    if (*lift) return cmd_lift(o, poly_src, start_src);
    if (*classify) return cmd_classify(o, cut_literal);
    if (*example) return cmd_example(o, example_id, all, sabotage);
    if (*list) return cmd_list(o);
    if (*evidence) return cmd_evidence(o, evidence_path, cut_literal);
  } catch (const expr::ParseError& e) {
    std::cerr << "defekt: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "defekt: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "defekt: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
