#pragma once

// Brute-force evaluation of the moment integrals
//
//   I_{i,j}(h) = \iint_{region(h)} x^i y^j dx dy
//
// over the component of the sub-level region that contains the center.
// Two independent methods are provided:
//
//   green   contour integral over the ray-parametrised oval, periodic
//           trapezoid rule in the ray angle (spectrally convergent);
//   area2d  iterated area integral over vertical slices, the inner
//           integral exact between the two slice roots of the cubic, the
//           outer one in a cosine-substituted x that absorbs the square-root
//           behaviour at the vertical tangents.
//
// The methods share nothing but the cubic root solver.

#include <cstddef>
#include <span>
#include <vector>

#include "q4/model.hpp"

namespace q4 {

enum class MomentForm {
  cubic_form,      // region F(x, y, h) < 0 of the cubic chart
  symmetric_form,  // region H(x, y) < h of the symmetric chart
};

struct MomentIndex {
  int i = 0;
  int j = 0;
  MomentForm form = MomentForm::symmetric_form;
};

enum class Method { area2d, green };

struct MomentValue {
  MomentIndex index;
  double h = 0.0;
  double value = 0.0;
  Method method = Method::green;
  double err_estimate = 0.0;  // |Q_{2N} - Q_N| of the last refinement
  std::size_t nodes = 0;
};

inline constexpr double kDefaultMomentTol = 1e-8;

/// Single moment. Throws DegenerateLevelError / DomainError for levels that are
/// not interior, NonconvergenceError if refinement stalls, GeometryError if a
/// negative power of x would be integrated too close to x = 0.
MomentValue moment(const MomentIndex& index, double h, const ModelParams& params,
                   Method method = Method::green, double tol = kDefaultMomentTol);

/// Several moments at one level sharing the geometric work (same form required).
std::vector<MomentValue> moments(std::span<const MomentIndex> indices, double h,
                                 const ModelParams& params, Method method = Method::green,
                                 double tol = kDefaultMomentTol);

/// Moments over an arbitrary cubic region (used for the dual annulus checks).
std::vector<MomentValue> moments_over(const CubicLevel& level, std::span<const MomentIndex> indices,
                                      double h, Method method, double tol);

/// Residue (-4h + (3 kappa h^2 - 4) y) / (kappa y^2 - 1) at the pole (0, y).
/// Requires kappa y^3 / 3 - y = h (DomainError otherwise); PoleError if kappa y^2 = 1.
double residue_value(double h, double y, const ModelParams& params);

/// Discriminant of the projective cubic {H = h} up to a positive normalisation:
/// disc_inf(kappa) * prod over affine critical points p of (h - H(p)), where
/// disc_inf is the discriminant of the cubic part (nonzero for kappa > 1, so the
/// curve is always smooth at infinity). Zero exactly at singular levels.
double curve_discriminant(double h, const ModelParams& params);

}  // namespace q4
