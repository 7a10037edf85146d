#include "defekt/poly.hpp"

namespace defekt {

ValuedPoly<VpRational> subst_affine(const ValuedPoly<VpRational>& f, const Rational& alpha, const Rational& beta,
                                    const Rational& divisor) {
  if (beta.is_zero()) throw std::invalid_argument("subst_affine: beta must be nonzero");
  if (divisor.is_zero()) throw DivisionByZero();
  const std::uint32_t p = f.prototype().prime();
  using P = ValuedPoly<VpRational>;
  // alpha + beta X
  P affine = P::constant(VpRational(p, alpha)) + P::monomial(VpRational(p, beta), 1);
  P g(f.prototype());
  for (const auto& [i, c] : f.terms()) g = g + affine.pow(static_cast<unsigned long>(i)).scaled(c);
  if (g.is_zero()) return g;
  if (!(g.leading().value() / divisor).is_integer())
    throw std::invalid_argument("subst_affine: divisor " + divisor.str() +
                                " does not divide the leading coefficient " + g.leading().value().str());
  return g.scaled(VpRational(p, divisor.inverse()));
}

}  // namespace defekt
