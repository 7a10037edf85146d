#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "defekt/defect.hpp"
#include "defekt/hahn.hpp"
#include "defekt/poly.hpp"
#include "defekt/rational.hpp"

namespace defekt {

struct ExampleParams {
  std::uint32_t p = 2;
  std::optional<unsigned> depth;      // entry default when absent
  std::optional<Rational> precision;  // entry default when absent
  std::uint64_t seed = 0;
  // Negative control: perturbs the Artin-Schreier constant c to c + 1.
  bool sabotage = false;
};

struct CheckResult {
  std::string name;
  std::string expected;
  std::string computed;
  bool pass;
};

struct Classification {
  std::string cut;
  std::string verdict;
};

struct ExampleReport {
  std::string id;
  std::uint32_t prime;
  unsigned depth;
  std::string precision;
  std::uint64_t seed;
  bool sabotaged;
  std::vector<CheckResult> checks;
  std::optional<DefectReport> defect;
  std::optional<Classification> classification;
  std::vector<std::string> notes;

  bool passed() const;
};

struct ExampleInfo {
  std::string id;
  std::string topic;
  std::string summary;
};

std::vector<ExampleInfo> list_examples();

// Throws std::invalid_argument for an unknown id or out-of-range parameters.
// A failing check never throws; it is recorded in the report.
ExampleReport run_example(const std::string& id, const ExampleParams& params);

// Pretty-printed JSON with sorted keys, no trailing newline.
std::string to_json(const ExampleReport& report);
std::string to_json(const std::vector<ExampleReport>& reports);
std::string to_text(const ExampleReport& report);

// Polynomials over F_p((t^Q)) that the catalog entries analyze.
std::vector<ValuedPoly<HahnSeries>> catalog_polynomials(std::uint32_t p);

}  // namespace defekt
