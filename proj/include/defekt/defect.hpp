#pragma once

#include <cstdint>
#include <string>

namespace defekt {

// Invariants (n, e, f, g, d) of a finite extension of valued fields:
// degree, ramification index, inertia degree, number of extensions of the
// valuation, and defect, with n = d * e * f * g and d = p^nu.
struct DefectReport {
  long n;
  long e;
  long f;
  long g;
  long d;
  unsigned nu;

  bool defectless() const { return d == 1; }
  std::string str() const;
  friend bool operator==(const DefectReport&, const DefectReport&) = default;
};

// Computes d = n / (e f g) and checks that it is a power of the
// characteristic exponent p. Throws HypothesisError otherwise.
DefectReport defect_report(long n, long e, long f, long g, std::uint32_t p);

// Multiplicativity of the defect in a tower M | L | K.
bool defect_product_check(long d_MK, long d_ML, long d_LK, std::uint32_t p);

// nu with d = p^nu, or -1 when d is not a power of p.
int power_of(long d, std::uint32_t p);

}  // namespace defekt
