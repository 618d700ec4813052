#pragma once

// Moment recurrences and the reductions that bring the Melnikov integral
// from its original double-integral form down to four basic moments.
//
// Conventions. All moments are Lebesgue integrals over the region around the
// center, so the inversion (x, y) -> (1/x, y/x) between the cubic and the
// symmetric chart maps I^cubic_{i,j} to +I^sym_{-i-j-3,j}; the orientation
// reversal of that map is what appears as a minus sign when the integrals are
// read as oriented 2-forms.
//
// The perturbation weights mu in ModelParams are the coefficients of the
// four-term form
//
//   I(h) = mu1 h I00 + mu2 I10 + mu3 I01 + mu4 (2 I_{-1,0} + 3 kappa h I_{-1,1}).
//
// The other routes carry their own weight vectors, related to this one by
// fixed invertible linear maps (route_weights).

#include <array>
#include <cmath>
#include <vector>

#include "q4/quadrature.hpp"

namespace q4 {

enum class RecurrenceKind { dx, dy, combined };

/// A residual that should vanish, together with the largest term magnitude.
struct Residual {
  double value = 0.0;
  double scale = 0.0;
  double relative() const { return scale > 0.0 ? std::abs(value) / scale : std::abs(value); }
};

/// Left side of the recurrence obtained by integrating F * x^i y^{j+1} dx (kind dx),
/// F * x^{i+1} y^j dy (kind dy), or their (i+4, -(j+1)) combination, with cubic-chart
/// moments evaluated by quadrature.
Residual recurrence_residual(RecurrenceKind kind, int i, int j, double h, const ModelParams& params,
                             Method method = Method::green, double tol = 1e-12);

struct MomentTerm {
  std::vector<double> h_weight;  // polynomial in h, ascending powers
  MomentIndex index;
};

struct MomentCombination {
  std::vector<MomentTerm> terms;

  double weight_at(std::size_t term, double h) const;
  double evaluate(double h, const ModelParams& params, Method method = Method::green,
                  double tol = 1e-12) const;
};

/// Symmetric-chart reduction of I_{1,2}, I_{2,1}, I_{3,0}, I_{0,3}, I_{-1,4} onto
/// {I00, I10, I01, I11, I_{-1,0}, I_{-1,1}}. DomainError for any other index.
MomentCombination moment_reduce(const MomentIndex& index, const ModelParams& params);

/// cubic I_{i,j}(h) - symmetric I_{-i-j-3,j}(h) (Lebesgue convention, see above).
Residual inversion_check(int i, int j, double h, const ModelParams& params,
                         Method method = Method::green, double tol = 1e-12);

enum class Route { cubic_shifted, cubic, symmetric, basic };

/// Weight vector of `route` that represents the same integral as the canonical
/// four-term weights `mu`.
MuVector route_weights(Route route, double kappa, const MuVector& mu);

/// The Melnikov integral by the chosen route; routes agree for the same params.mu.
/// basic: the four-term form above; symmetric: symmetric-chart moments of degree three;
/// cubic: cubic-chart moments I_{-6,*}, I_{-2,0}; cubic_shifted: the cubic chart with the
/// integrand written in y - 1, the original form of the integral.
double assemble_I(double h, const ModelParams& params, Route route, Method method = Method::green,
                  double tol = 1e-12);

}  // namespace q4
