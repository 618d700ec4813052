#pragma once

// Chebyshev-property probes for L2, the zero-count chain I -> G -> R on the
// period annulus, and sampling tests of the two-solution bounds.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "q4/melnikov.hpp"
#include "q4/winding.hpp"
#include "q4/zeros.hpp"

namespace q4 {

/// Open annulus window (-2/3 + margin, -2/(3 sqrt kappa) - margin).
std::pair<double, double> annulus_window(const ModelParams& params, double margin = 1e-6);

// --- residue solution ------------------------------------------------------------

struct ResidueSolution {
  double h = 0.0;
  double y0 = 0.0;  // the real root of kappa y^3/3 - y = h (the smallest when there are three)
  double f = 0.0;   // residue_value(h, y0)
};

ResidueSolution residue_solution(double h, const ModelParams& params);

/// Zero of the residue solution from its numerator identity: h* = -(2/3) sqrt(5/kappa).
double residue_zero_level(double kappa);

/// Projective angle span of a fundamental pair of L2 over a window in h (h < 0),
/// integrated in s = 9 kappa h^2 / 4 with the transformed operator. Some
/// solution is nowhere zero on the window iff the span is below pi.
double frame_angle_span(const ModelParams& params, std::pair<double, double> window);

struct WindowVerdict {
  std::string name;
  std::pair<double, double> window;
  ZeroReport f_zeros;
  bool contains_h_star = false;
  bool f_nonvanishing = false;  // the residue solution has no zero on the window
  double frame_span = 0.0;
  bool chebyshev = false;       // some solution of L2 is nowhere zero (frame_span < pi)
  std::string claim_verdict;    // "confirmed" or "contradicted" for the nonvanishing of f
};

struct ChebyshevReport {
  double kappa = 0.0;
  double h_star = 0.0;
  double h_star_located = 0.0;  // zero of f found numerically (NaN if none)
  double h_star_error = 0.0;
  double y0_at_saddle = 0.0;          // computed root at h = -2/(3 sqrt kappa)
  double y0_at_saddle_claimed = 0.0;  // -sqrt(5/kappa)
  double max_L2_residual = 0.0;       // FD residual of L2 f relative to its term scale
  std::vector<double> residual_points;
  std::vector<double> residuals;
  std::vector<WindowVerdict> windows;
};

/// Residue-solution probe on the given windows; defaults to the annulus and a
/// truncation (s < 1e6) of (-inf, -2/(3 sqrt kappa)). Findings are reported, not asserted.
ChebyshevReport chebyshev_probe(const ModelParams& params,
                                std::optional<std::pair<double, double>> window = std::nullopt);

// --- bound chain -------------------------------------------------------------------

/// Basic PF data on the annulus grid of one kappa, shared by all weight vectors.
class AnnulusBasis {
 public:
  AnnulusBasis(const ModelParams& params, int grid, double margin = 1e-6);

  const ModelParams& params() const { return params_; }
  std::pair<double, double> window() const { return window_; }
  const std::vector<double>& grid() const { return grid_; }
  const PFTable& table() const { return table_; }

  double eval_I(double h, const MuVector& mu) const;
  double eval_G(double h, const MuVector& mu) const;
  double eval_R(double h, const MuVector& mu) const;
  std::vector<double> grid_I(const MuVector& mu) const;
  std::vector<double> grid_G(const MuVector& mu) const;
  std::vector<double> grid_R(const MuVector& mu) const;

  /// max over basis weights and check points of |I - h int_{-2/3}^h G / xi^2| / max|I|.
  double reconstruction_error() const;

 private:
  ModelParams params_;
  std::pair<double, double> window_;
  std::vector<double> grid_;
  PFTable table_;
  std::vector<std::array<double, 4>> I_, G_, R_;  // per node, per unit weight
};

struct BoundReport {
  double kappa = 0.0;
  MuVector mu{};
  ZeroReport I, G, R;
  bool r_ok = false;      // count(R) <= 6
  bool g_ok = false;      // count(G) <= count(R) + 2
  bool i_ok = false;      // count(I) <= count(G) <= 8
  double reconstruction_error = 0.0;
  bool violation() const { return !(r_ok && g_ok && i_ok); }
};

BoundReport bound_pipeline(const AnnulusBasis& basis, const MuVector& mu, double tol = 1e-10);
BoundReport bound_pipeline(const ModelParams& params, int grid = 200);

// --- sampling --------------------------------------------------------------------

/// Deterministic per-trial seed derived from the run seed.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial);
/// Uniform point on the unit sphere in R^dim.
std::vector<double> random_sphere(std::uint64_t seed, int dim);

struct VariationTrial {
  int k = 0;          // zeros of R on the window
  int count_G = 0;
  bool ok = false;    // count_G <= k + 2
  std::vector<double> R_roots;
};

struct VariationSummary {
  double kappa = 0.0;
  std::pair<double, double> window;
  double frame_span = 0.0;
  std::vector<VariationTrial> trials;
  int violations = 0;
};

/// Random R = c prod (h - r_i) with k <= 6 roots in the window, and solutions
/// G = G_p + c1 x1 + c2 x2 of L2 G = R by variation of parameters.
VariationSummary variation_sample_test(const ModelParams& params, std::pair<double, double> window, int trials,
                               std::uint64_t seed, int grid = 200);

struct VnTrial {
  std::vector<double> P, Q;
  int real_zeros = 0;           // on (1, kappa)
  int real_zeros_enclosed = 0;  // on (1 + epsilon, kappa), inside the winding contour
  std::optional<WindingReport> winding;
  std::string error;
};

struct VnSummary {
  int n = 0;
  double kappa = 0.0;
  int max_real = 0;
  int max_winding = 0;
  int exceed_real = 0;
  int exceed_winding = 0;
  int winding_below_real = 0;  // winding < real_zeros_enclosed
  int errors = 0;
  std::vector<VnTrial> trials;
};

/// Random PolyPairs (coefficients uniform on the unit sphere); real zeros of
/// P J1 + Q J2 on (1, kappa) and, when `winding` is set, the winding number.
VnSummary vn_sample_test(int n, int trials, const ModelParams& params, std::uint64_t seed, bool winding = true,
                         int grid = 200, const ContourOptions& contour = {});

}  // namespace q4
