#include <doctest.h>

#include <algorithm>
#include <future>
#include <nlohmann/json.hpp>

#include "defekt/catalog.hpp"

using namespace defekt;

namespace {

std::vector<std::uint32_t> primes_for(const std::string& id) {
  if (id == "sqrt3" || id == "sqrt_minus1") return {2};
  return {2, 3, 5};
}

const CheckResult* find_check(const ExampleReport& r, const std::string& prefix) {
  for (const auto& c : r.checks)
    if (c.name.rfind(prefix, 0) == 0) return &c;
  return nullptr;
}

bool is_power_of(long d, long p) {
  while (d % p == 0) d /= p;
  return d == 1;
}

}  // namespace

TEST_CASE("registry") {
  const auto infos = list_examples();
  CHECK(infos.size() >= 10);
  auto has = [&](const std::string& id) {
    return std::any_of(infos.begin(), infos.end(), [&](const ExampleInfo& i) { return i.id == id; });
  };
  CHECK(has("abhyankar"));
  CHECK(has("qp_radical"));
  for (const auto& i : infos) {
    CHECK_FALSE(i.topic.empty());
    CHECK_FALSE(i.summary.empty());
  }
  CHECK_THROWS_AS(run_example("nagata", {}), std::invalid_argument);
  ExampleParams deep;
  deep.depth = 40;
  CHECK_THROWS_AS(run_example("abhyankar", deep), std::invalid_argument);
  ExampleParams odd;
  odd.p = 3;
  CHECK_THROWS_AS(run_example("sqrt3", odd), std::invalid_argument);
  ExampleParams composite;
  composite.p = 4;
  CHECK_THROWS(run_example("fks", composite));
}

TEST_CASE("every entry passes with default parameters") {
  for (const auto& info : list_examples()) {
    for (std::uint32_t p : primes_for(info.id)) {
      ExampleParams params;
      params.p = p;
      const ExampleReport r = run_example(info.id, params);
      CHECK_MESSAGE(r.passed(), to_text(r));
      CHECK_FALSE(r.checks.empty());
      if (r.defect) CHECK(is_power_of(r.defect->d, p));
    }
  }
}

TEST_CASE("reference runs") {
  ExampleParams a;
  a.p = 2;
  a.depth = 5;
  a.precision = Rational(-1, 64);
  const ExampleReport r = run_example("abhyankar", a);
  CHECK(r.passed());
  REQUIRE(r.classification);
  CHECK(r.classification->verdict == "Independent");

  ExampleParams t;
  t.p = 3;
  t.depth = 3;
  const ExampleReport tr = run_example("transform", t);
  CHECK(tr.passed());
  REQUIRE(tr.classification);
  CHECK(tr.classification->verdict == "Dependent");
  CHECK(tr.classification->cut == "lt:-1/3");
}

TEST_CASE("sabotage makes the residual check fail") {
  ExampleParams s;
  s.p = 2;
  s.depth = 5;
  s.sabotage = true;
  const ExampleReport r = run_example("abhyankar", s);
  CHECK_FALSE(r.passed());
  const CheckResult* residual = find_check(r, "theta_5^p - theta_5 - 1/t");
  REQUIRE(residual != nullptr);
  CHECK_FALSE(residual->pass);
  for (const char* id : {"ostrowski_t", "as_tower"})
    for (std::uint32_t p : {2u, 3u}) {
      ExampleParams q;
      q.p = p;
      q.depth = 3;
      q.sabotage = true;
      CHECK_MESSAGE(!run_example(id, q).passed(), id);
    }
}

TEST_CASE("reports are deterministic") {
  for (const auto& info : list_examples()) {
    ExampleParams params;
    params.seed = 9;
    const std::string first = to_json(run_example(info.id, params));
    auto again = std::async(std::launch::async, [&] { return to_json(run_example(info.id, params)); });
    CHECK(first == to_json(run_example(info.id, params)));
    CHECK(first == again.get());
  }
}

TEST_CASE("raising depth or precision keeps passing checks passing") {
  for (const auto& info : list_examples()) {
    for (std::uint32_t p : primes_for(info.id)) {
      if (p == 5 && (info.id == "as_tower" || info.id == "transform" || info.id == "qp_radical")) continue;
      ExampleParams base;
      base.p = p;
      const Rational default_prec = Rational::parse(run_example(info.id, base).precision);
      const unsigned max_depth = info.id == "quasi_add" ? 3 : 4;
      for (unsigned k = 1; k < max_depth; ++k) {
        for (const Rational& bump : {Rational(0), Rational(1), Rational(5)}) {
          ExampleParams lo = base;
          lo.depth = k;
          lo.precision = default_prec + bump;
          const ExampleReport r = run_example(info.id, lo);
          if (!r.passed()) continue;
          ExampleParams deeper = lo;
          deeper.depth = k + 1;
          ExampleParams finer = lo;
          finer.precision = *lo.precision + Rational(3);
          CHECK_MESSAGE(run_example(info.id, deeper).passed(), info.id << " p=" << p << " k=" << k + 1);
          CHECK_MESSAGE(run_example(info.id, finer).passed(), info.id << " p=" << p << " k=" << k);
        }
      }
    }
  }
}

TEST_CASE("JSON report shape") {
  const auto j = nlohmann::json::parse(to_json(run_example("abhyankar", {})));
  for (const char* key : {"checks", "classification", "defect_report", "id", "notes", "parameters", "pass", "prime"})
    CHECK_MESSAGE(j.contains(key), key);
  CHECK(j["pass"] == true);
  CHECK(j["defect_report"]["d"] == 2);
  CHECK(j["parameters"]["depth"] == 5);
  const auto first = j["checks"][0];
  for (const char* key : {"computed", "expected", "name", "pass"}) CHECK(first.contains(key));
  const auto arr = nlohmann::json::parse(to_json(std::vector<ExampleReport>{run_example("fks", {})}));
  CHECK(arr.is_array());
  CHECK(arr.size() == 1);
}
