#pragma once

#include <vector>

namespace q4 {

struct CubicRoot {
  double value = 0.0;
  int multiplicity = 1;
};

/// Real roots of a3 x^3 + a2 x^2 + a1 x + a0, ascending, Newton-polished.
/// Roots that coalesce within `merge_tol` (relative to the coefficient scale)
/// are reported once with multiplicity 2 or 3. Degenerate leading
/// coefficients fall back to the quadratic / linear formulas.
std::vector<CubicRoot> real_roots_cubic(double a3, double a2, double a1, double a0,
                                        double merge_tol = 1e-10);

/// Value of the cubic at x (Horner).
inline double eval_cubic(double a3, double a2, double a1, double a0, double x) {
  return ((a3 * x + a2) * x + a1) * x + a0;
}

}  // namespace q4
