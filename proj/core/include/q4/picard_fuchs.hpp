#pragma once

// Picard-Fuchs system of the six basic symmetric-chart moments
//
//   V = (I00, I10, I01, I11, I_{-1,0}, I_{-1,1}),   V = M(h) V',
//
// with M linear in h, its two-dimensional reductions for (I'00, I'11) in h
// and in s = 9 kappa h^2 / 4, the operators L1 and L2, and analytic
// continuation of the s-system in the complex plane.

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "q4/model.hpp"
#include "q4/quadrature.hpp"

namespace q4 {

using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

struct PFVector {
  double h = 0.0;
  Vec6 values = Vec6::Zero();
  Vec6 derivs = Vec6::Zero();
};

/// M(h) with V = M(h) V'. det M = (3h-2)(3h+2)(9 kappa h^2-4)^2 / (144 kappa^2).
Mat6 pf_matrix(double h, double kappa);
/// dM/dh (constant).
Mat6 pf_matrix_slope();

/// values - M(h) derivs, one entry per equation.
Vec6 pf_residuals(const PFVector& pf, const ModelParams& params);

struct PFSolve {
  Vec6 d1, d2, d3;  // first, second and third h-derivatives
  double condition = 0.0;
};

/// Largest condition number of M accepted by the solves.
inline constexpr double kMaxPFCondition = 1e12;

/// First derivatives from the linear solve. SingularMatrixError near critical h.
Vec6 pf_derivatives(double h, const Vec6& values, const ModelParams& params);
/// Derivatives up to order three; M'' = 0 gives V'' = M^{-1}(1 - M')V', V''' = M^{-1}(1 - 2M')V''.
PFSolve pf_derivatives_full(double h, const Vec6& values, const ModelParams& params);

/// Basic moments by quadrature plus solve-based derivatives.
PFVector oracle_pf_vector(double h, const ModelParams& params, Method method = Method::green,
                          double tol = 1e-13);

/// Values of h where M(h) is singular: +-2/3, +-2/(3 sqrt kappa).
std::array<double, 4> pf_singular_levels(double kappa);

/// Adaptive RKF7(8) integration of V' = M(h)^{-1} V with local error <= tol.
/// SingularityCrossingError if [from_h, to_h] contains a singular level.
Vec6 propagate(double from_h, const Vec6& values0, double to_h, const ModelParams& params,
               double tol = 1e-13);

/// PF-propagated moments on a node set, initialised once from the quadrature
/// oracle at the middle of the annulus. Evaluation anywhere in the annulus
/// propagates from the nearest node.
class PFTable {
 public:
  PFTable(const ModelParams& params, std::vector<double> nodes, double tol = 1e-13);

  const ModelParams& params() const { return params_; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<Vec6>& node_values() const { return values_; }
  Vec6 values_at(double h) const;
  PFVector pf_at(double h) const;

 private:
  ModelParams params_;
  std::vector<double> nodes_;
  std::vector<Vec6> values_;
  double tol_;
};

enum class DerivOrder { second, third };

/// (I''00, I''11) or (I'''00, I'''11) from J1 = I'00, J2 = I'11 by the rational
/// formulas implied by the two-dimensional system. PoleError at 9h^2 = 4 or 9 kappa h^2 = 4.
std::array<double, 2> derivative_formulas(DerivOrder order, double h, double J1, double J2,
                                          const ModelParams& params);

/// Residuals of the two-dimensional system for (I'00, I'11) given second derivatives:
/// {(9kh^2-4) I''00 - 4(k-1) I''11 + 3kh I'00, (9kh^2-4)(I''00 - I''11) + 3kh I'11}.
std::array<double, 2> pfs_residuals(double h, double J1, double J2, double J1p, double J2p,
                                    const ModelParams& params);

/// Residuals of the system for (I'_{-1,0}, I'_{-1,1}).
std::array<double, 2> pf_minus_residuals(double h, const Vec6& d1, const Vec6& d2,
                                         const ModelParams& params);

/// Both sides of L2 J = (4/3)(kappa-1)[h(9 kappa h^2-4) I'''11 + (6 kappa h^2+8) I''11]
/// for J = -4h I'_{-1,0} + (3 kappa h^2 - 4) I'_{-1,1}, from PF derivatives.
std::array<double, 2> l2j_identity(double h, const PFSolve& solve, const ModelParams& params);

/// h I' - I.
double apply_L1(double I_value, double I_prime, double h);
/// 5 kappa h g - (9 kappa h^2 - 8) g' + h (9 kappa h^2 - 4) g''.
double apply_L2(double g, double g1, double g2, double h, const ModelParams& params);

/// s = 9 kappa h^2 / 4 for h < 0. DomainError for h >= 0.
double s_map(double h, const ModelParams& params);
/// h = -(2/3) sqrt(s / kappa) for s > 0. DomainError for s <= 0.
double h_of_s(double s, const ModelParams& params);
/// s (1 - s) g'' - g'/2 - 5 g / 36 (derivatives in s).
double transformed_L2(double g, double gs, double gss, double s);
/// L2 = l2_factor(h) * transformed operator under h = h(s); equals -36 kappa h.
double l2_factor(double h, const ModelParams& params);

// --- complex continuation in s -----------------------------------------------

using CVec2 = Eigen::Vector2cd;
using CMat2 = Eigen::Matrix2cd;

/// dJ/ds = A(s) J, A = [[1-s, k-1], [1-s, s-1]] / (6 (s-1)(s-k)).
CMat2 pfs2_matrix(std::complex<double> s, double kappa);

struct JState {
  std::complex<double> s;
  CVec2 J = CVec2::Zero();  // (I'00, I'11) continued
  CMat2 W = CMat2::Zero();  // fundamental matrix, columns are solutions
};

struct PathSegment {
  enum class Kind { line, arc };
  Kind kind = Kind::line;
  std::complex<double> from, to;  // line
  std::complex<double> center;    // arc
  double radius = 0.0, theta0 = 0.0, theta1 = 0.0;
  std::string name;

  static PathSegment line(std::complex<double> a, std::complex<double> b, std::string name = "line");
  static PathSegment arc(std::complex<double> c, double r, double t0, double t1,
                         std::string name = "arc");
  std::complex<double> at(double tau) const;
  std::complex<double> velocity(double tau) const;  // ds/dtau
  std::complex<double> start() const { return at(0.0); }
  std::complex<double> end() const { return at(1.0); }
};

using Path = std::vector<PathSegment>;

struct ContinuationOptions {
  double eps_min = 1e-4;   // closest allowed approach to s = 1 and s = kappa
  double max_dtau = 1.0;   // extra cap on the step in the segment parameter
};

/// Called on every accepted step: segment index, segment parameter, state.
using JObserver = std::function<void(std::size_t, double, const JState&)>;

/// Continues J and W along the path. ProximityError if the path comes within
/// eps_min of s = 1 or s = kappa. Steps satisfy ||A(s)|| |ds| <= 0.1.
JState propagate_J(const Path& path, const JState& J0, const ModelParams& params, double tol = 1e-12,
                   const ContinuationOptions& options = {}, const JObserver& observer = {});

/// Real J = (I'00, I'11) at s in (1, kappa) from the quadrature oracle and the PF solve,
/// with W = [J, (-J2, J1)].
JState physical_J(double s, const ModelParams& params);

}  // namespace q4
