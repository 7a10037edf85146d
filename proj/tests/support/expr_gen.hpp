#pragma once

#include "defekt/expr.hpp"
#include "support/generators.hpp"

namespace defekt::testing {

// Random tree in the shape the parser produces: number literals are
// nonnegative, every other node kind may appear anywhere.
inline expr::Node random_expr(Rng& rng, int depth) {
  using expr::Kind;
  if (depth == 0 || rng.uniform(0, 3) == 0) {
    switch (rng.uniform(0, 3)) {
      case 0: return expr::number(Rational(BigInt(rng.uniform(0, 9)), BigInt(rng.uniform(1, 4))));
      case 1: return expr::t_power(random_exponent(rng, {1, 2, 3, 4}, -2, 2));
      case 2: return expr::p_power(random_exponent(rng, {1, 2, 4}, -2, 2));
      default: return expr::var();
    }
  }
  switch (rng.uniform(0, 7)) {
    case 0: return expr::neg(random_expr(rng, depth - 1));
    case 1: return expr::call(expr::Func(rng.uniform(0, 4)), random_expr(rng, depth - 1));
    case 2: return expr::power(random_expr(rng, depth - 1), std::uint64_t(rng.uniform(0, 4)));
    case 3: return expr::binary(Kind::Add, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 4: return expr::binary(Kind::Sub, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 5: return expr::binary(Kind::Div, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    default: return expr::binary(Kind::Mul, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
  }
}

}  // namespace defekt::testing
