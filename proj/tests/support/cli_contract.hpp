#pragma once

#include <string>
#include <vector>

namespace defekt::testing {

struct GoldenCase {
  std::vector<std::string> args;
  const char* file;
};

inline const std::vector<GoldenCase>& golden_cases() {
  static const std::vector<GoldenCase> cases{
      {{"example", "abhyankar", "-p", "2", "-k", "5", "--json"}, "example_abhyankar_p2_k5.json"},
      {{"example", "transform", "-p", "3", "-k", "3", "--json"}, "example_transform_p3_k3.json"},
      {{"np", "-p", "3", "X^3 - X - inv(t)", "--json"}, "np_p3_cubic.json"},
      {{"classify", "lt:0", "--json"}, "classify_lt0.json"},
  };
  return cases;
}

struct ExitCase {
  std::vector<std::string> args;
  int code;
};

// 0: success, 1: failed check or math error, 2: usage error.
inline const std::vector<ExitCase>& exit_matrix() {
  static const std::vector<ExitCase> matrix{
      {{"list"}, 0},
      {{"example", "abhyankar"}, 0},
      {{"example", "--all", "-p", "3"}, 0},
      {{"eval", "t + 1"}, 0},
      {{"lift", "-p", "3", "--prec", "6", "X^2 - 1 - t", "1"}, 0},
      {{"lift", "-p", "2", "--prec", "8", "X^2 - 1 - p^(3)", "1"}, 0},
      {{"example", "abhyankar", "--sabotage"}, 1},
      {{"classify", "le:0"}, 1},
      {{"classify", "all"}, 1},
      {{"eval", "inv(0)"}, 1},
      {{"lift", "-p", "3", "X^2 - t", "1"}, 1},
      {{"eval", "t + p^(1)"}, 1},
      {{}, 2},
      {{"bogus"}, 2},
      {{"eval"}, 2},
      {{"eval", "t^(1/0)"}, 2},
      {{"eval", "foo(t)"}, 2},
      {{"eval", "X + 1"}, 2},
      {{"eval", "-p", "4", "t"}, 2},
      {{"eval", "--prec", "x", "t"}, 2},
      {{"classify", "lt:"}, 2},
      {{"example", "nagata"}, 2},
      {{"example", "abhyankar", "-k", "99"}, 2},
      {{"example", "sqrt3", "-p", "3"}, 2},
      {{"evidence", "/nonexistent.json", "--cut", "lt:0"}, 2},
  };
  return matrix;
}

}  // namespace defekt::testing
