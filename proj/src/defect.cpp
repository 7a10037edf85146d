#include "defekt/defect.hpp"

#include "defekt/errors.hpp"
#include "defekt/prime_field.hpp"

namespace defekt {

int power_of(long d, std::uint32_t p) {
  if (d < 1) return -1;
  int nu = 0;
  while (d % long(p) == 0) {
    d /= long(p);
    ++nu;
  }
  return d == 1 ? nu : -1;
}

std::string DefectReport::str() const {
  return "n=" + std::to_string(n) + " e=" + std::to_string(e) + " f=" + std::to_string(f) +
         " g=" + std::to_string(g) + " d=" + std::to_string(d);
}

DefectReport defect_report(long n, long e, long f, long g, std::uint32_t p) {
  checked_prime(p);
  if (n < 1 || e < 1 || f < 1 || g < 1) throw HypothesisError("extension invariants must be positive");
  const long efg = e * f * g;
  // fundamental inequality n >= sum e_i f_i, all g extensions alike
  if (efg > n) throw HypothesisError("fundamental inequality violated: e*f*g = " + std::to_string(efg) +
                                     " exceeds n = " + std::to_string(n));
  if (n % efg != 0)
    throw HypothesisError("e*f*g = " + std::to_string(efg) + " does not divide n = " + std::to_string(n));
  const long d = n / efg;
  const int nu = power_of(d, p);
  if (nu < 0)
    throw HypothesisError("defect " + std::to_string(d) + " is not a power of the characteristic exponent " +
                          std::to_string(p));
  return {n, e, f, g, d, unsigned(nu)};
}

bool defect_product_check(long d_MK, long d_ML, long d_LK, std::uint32_t p) {
  checked_prime(p);
  for (long d : {d_MK, d_ML, d_LK})
    if (power_of(d, p) < 0)
      throw HypothesisError("defect " + std::to_string(d) + " is not a power of " + std::to_string(p));
  return d_MK == d_ML * d_LK;
}

}  // namespace defekt
