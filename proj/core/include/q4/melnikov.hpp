#pragma once

// G = L1(I) and R = L2(G) for the Melnikov integral, and the exact
// coefficients of
//
//   R(h) = h [(a0 + a1 h^2 + a2 h^4 + a3 h^6) I'00 + (b0 + b1 h^2 + b2 h^4) I'11]
//          / ((9h^2 - 4)^2 (9 kappa h^2 - 4)).
//
// G is linear in the G-form weights nu:
//
//   G = (nu1 h^2 + nu3) I'00 + nu2 I'11 + nu4 [-4h I'_{-1,0} + (3 kappa h^2 - 4) I'_{-1,1}],
//
// which follow from the four-term weights mu of ModelParams by g_weights.

#include <array>
#include <string>

#include "q4/exact.hpp"
#include "q4/picard_fuchs.hpp"

namespace q4 {

/// nu = (mu1, -2 mu2/3 - 2 (kappa-1) mu3 / (3 kappa), -2 mu3 / (3 kappa), mu4).
MuVector g_weights(double kappa, const MuVector& mu);

/// G from G-form weights and first derivatives of the basic moments.
double eval_G_weights(double h, double kappa, const MuVector& nu, const Vec6& d1);
/// G = h I' - I for the weights params.mu.
double eval_G(double h, const ModelParams& params, const PFVector& pf);

struct GJet {
  double g = 0.0, g1 = 0.0, g2 = 0.0;
};

/// G and its first two h-derivatives from the PF solve.
GJet eval_G_jet(double h, const ModelParams& params, const PFSolve& solve);

enum class RRoute { direct, pf_numeric };

/// R at h from the PF data at h. direct: termwise L2 with the rational derivative
/// formulas and the L2 J identity (needs only I'00, I'11); pf_numeric: apply_L2 to
/// the G jet from the PF solve. PoleError at 9h^2 = 4 or 9 kappa h^2 = 4.
double eval_R(double h, const ModelParams& params, RRoute route, const PFVector& pf);
/// Same, with the PF data from the quadrature oracle.
double eval_R(double h, const ModelParams& params, RRoute route);

/// An exact coefficient: sum over i of weight[i](kappa) * mu_i.
struct RCoefficient {
  std::array<exact::RatK, 4> weight;
  double value(double kappa, const MuVector& mu) const;
  std::string to_string() const;
};

struct RCoefficients {
  std::array<RCoefficient, 4> a;
  std::array<RCoefficient, 3> b;
  /// Coefficients of the numerators in the G-form basis nu (polynomials in kappa).
  std::array<std::array<exact::KPoly, 4>, 4> a_nu;
  std::array<std::array<exact::KPoly, 4>, 3> b_nu;

  struct Numeric {
    std::array<double, 4> a{};
    std::array<double, 3> b{};
  };
  Numeric evaluate(double kappa, const MuVector& mu) const;
  /// R from the coefficients and (I'00, I'11) at h.
  double eval_R(double h, double kappa, const MuVector& mu, double J1, double J2) const;
  std::string to_text() const;
};

/// Exact extraction (computed once, symbolic in kappa and mu). The params are
/// accepted for interface symmetry; the result does not depend on them.
/// ConsistencyError if the expected denominator or parity structure fails.
const RCoefficients& extract_R_coeffs(const ModelParams& params = make_params(2.0));

}  // namespace q4
