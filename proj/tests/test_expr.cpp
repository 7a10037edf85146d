#include <doctest.h>

#include <map>

#include "defekt/evaluate.hpp"
#include "defekt/expr.hpp"
#include "support/expr_gen.hpp"

using namespace defekt;
using namespace defekt::expr;

TEST_CASE("parser builds the expected trees") {
  CHECK(parse("t^(-1/2) + t^(-1/4)") ==
        binary(Kind::Add, t_power(Rational(-1, 2)), t_power(Rational(-1, 4))));
  CHECK(parse("v(inv(1 + t))") == call(Func::V, call(Func::Inv, binary(Kind::Add, number(1), t_power(1)))));
  CHECK(parse("  X^3 -X-inv( t ) ") ==
        binary(Kind::Sub, binary(Kind::Sub, power(var(), 3), var()), call(Func::Inv, t_power(1))));
  CHECK(parse("p^(1/2)") == p_power(Rational(1, 2)));
  CHECK(parse("-t") == neg(t_power(1)));
  CHECK(parse("neg(t)") == call(Func::Neg, t_power(1)));
}

TEST_CASE("precedence and associativity") {
  // 1 + (t*t), not (1+t)*t
  CHECK(parse("1+t*t") == binary(Kind::Add, number(1), binary(Kind::Mul, t_power(1), t_power(1))));
  CHECK(parse("1-t-t") == binary(Kind::Sub, binary(Kind::Sub, number(1), t_power(1)), t_power(1)));
  CHECK(parse("2*t^3") == binary(Kind::Mul, number(2), power(t_power(1), 3)));
  CHECK(parse("-t*X") == neg(binary(Kind::Mul, t_power(1), var())));
  CHECK(parse("t / 2 / 3") == binary(Kind::Div, binary(Kind::Div, t_power(1), number(2)), number(3)));
  CHECK(parse("t/2/3") == binary(Kind::Div, t_power(1), number(Rational(2, 3))));
  CHECK(print(binary(Kind::Div, binary(Kind::Div, t_power(1), number(2)), number(3))) == "t / 2 / 3");
  // a digit run glued to '/' and a digit is one literal
  CHECK(parse("1/2*t") == binary(Kind::Mul, number(Rational(1, 2)), t_power(1)));
  CHECK(parse("1 / 2") == binary(Kind::Div, number(1), number(2)));
}

TEST_CASE("parse errors carry offsets and expected tokens") {
  auto offset_of = [](const char* src) -> long {
    try {
      parse(src);
    } catch (const ParseError& e) {
      return long(e.offset());
    }
    return -1;
  };
  CHECK(offset_of("t^(1/0)") == 3);
  CHECK(offset_of("foo(t)") == 0);
  CHECK(offset_of("1 + ") == 4);
  CHECK(offset_of("(t") == 2);
  CHECK(offset_of("t t") == 2);
  CHECK(offset_of("p^2") == 2);
  CHECK(offset_of("t^(1/2") == 6);
  try {
    parse("(t");
  } catch (const ParseError& e) {
    CHECK(e.expected().count("')'") == 1);
  }
  try {
    parse("1 +");
  } catch (const ParseError& e) {
    CHECK(e.expected().count("'t'") == 1);
  }
}

TEST_CASE("print is stable under reparsing") {
  testing::Rng rng(2024);
  for (int i = 0; i < 500; ++i) {
    const Node ast = testing::random_expr(rng, 4);
    const std::string text = print(ast);
    const Node back = parse(text);
    REQUIRE_MESSAGE(back == ast, text);
    CHECK(print(back) == text);
  }
  for (const char* src : {"-(1 + t)*X", "(-t)^2", "t^(1/2)^3", "(1/2)^2", "t/(1/2)", "1 - (t - X)", "-(-t)"}) {
    const Node a = parse(src);
    CHECK_MESSAGE(parse(print(a)) == a, src);
  }
}

TEST_CASE("evaluation reference values") {
  CHECK(evaluate("v(t^(-1/2) + t^(-1/4))", EvalConfig{2, Rational(10)}).str() == "-1/2");
  const EvalValue z = evaluate("frob(t^(-1/4)) - t^(-1/2)", EvalConfig{2, Rational(1)});
  CHECK(z.str() == "0");
  CHECK(std::get<SeriesPoly>(z.value).is_zero());
  CHECK(evaluate("inv(1+t)", EvalConfig{3, Rational(4)}).str() == "1 + 2*t + t^2 + 2*t^3 + O(t^4)");
  CHECK(evaluate("1+t*t", EvalConfig{5, Rational(4)}).str() == "1 + t^2");
  // each factor is known to p^(3), so the product is known to p^(1/2 + 3)
  CHECK(evaluate("p^(1/2)*p^(1/2)", EvalConfig{2, Rational(3)}).str() == "1*p^(1) + O(p^(7/2))");
  CHECK(evaluate("v(p^(1/4) + p^(1))", EvalConfig{2, Rational(3)}).str() == "1/4");
  CHECK(evaluate("proot(t)", EvalConfig{3, Rational(3)}).str() == "t^(1/3)");
}

TEST_CASE("evaluation errors") {
  const EvalConfig c{3, Rational(4)};
  CHECK_THROWS_AS(evaluate("t + p^(1)", c), DomainMismatch);
  CHECK_THROWS_AS(evaluate("inv(0)", c), DivisionByZero);
  CHECK_THROWS_AS(evaluate("1/3", c), DivisionByZero);
  CHECK_THROWS_AS(evaluate("inv(X)", c), DomainMismatch);
  CHECK_THROWS_AS(evaluate("1 + v(t)", c), DomainMismatch);
  CHECK_THROWS_AS(evaluate("frob(p^(1))", c), DomainMismatch);
  CHECK_THROWS_AS(evaluate("p^(1/2)", c), DomainMismatch);
}

namespace {

// Independent oracle: sums of products of monomials as exponent -> coefficient maps.
using Sparse = std::map<Rational, long>;

Sparse mul(const Sparse& a, const Sparse& b, long p) {
  Sparse r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) r[ea + eb] = (r[ea + eb] + ca * cb) % p;
  std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
  return r;
}

Sparse add(Sparse a, const Sparse& b, long p) {
  for (const auto& [e, c] : b) a[e] = (a[e] + c) % p;
  std::erase_if(a, [](const auto& kv) { return kv.second == 0; });
  return a;
}

}  // namespace

TEST_CASE("evaluation matches a sparse-map oracle on polynomial expressions") {
  testing::Rng rng(77);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 200; ++trial) {
      Node ast = number(0);
      Sparse want;
      const int summands = int(rng.uniform(1, 4));
      for (int s = 0; s < summands; ++s) {
        Node prod = number(1);
        Sparse term{{Rational(0), 1}};
        const int factors = int(rng.uniform(1, 3));
        for (int f = 0; f < factors; ++f) {
          const long c = rng.uniform(1, 9);
          const Rational e = testing::random_exponent(rng, {1, 2, 3}, -2, 2);
          prod = binary(Kind::Mul, prod, binary(Kind::Mul, number(c), t_power(e)));
          term = mul(term, {{e, c % long(p)}}, p);
          std::erase_if(term, [](const auto& kv) { return kv.second == 0; });
        }
        ast = binary(Kind::Add, ast, prod);
        want = add(want, term, p);
      }
      const auto got = evaluate_series_poly(parse(print(ast)), EvalConfig{p, Rational(10)});
      const HahnSeries value = got.coeff(0);
      REQUIRE(value.is_exact());
      Sparse have;
      for (const auto& t : value.terms()) have[t.exponent] = t.coeff;
      CHECK_MESSAGE(have == want, print(ast));
    }
  }
}
