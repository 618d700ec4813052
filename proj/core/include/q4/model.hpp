#pragma once

// Codimension-four quadratic center: parameters, first integrals in the
// three coordinate systems, critical levels and the ovals of the period
// annulus.
//
// Coordinate systems:
//   original   (x, y), z = x + iy, the quadratic system itself;
//   XY         (X, Y) with X = sqrt(psi), Y = c x - (2 + b) y;
//   cubic      (X, Y - 1) with level h = 8 (2 - b) t, region F(x, y, h) < 0;
//   symmetric  (1/x, y/x) of the cubic chart, region H(x, y) < h.

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "q4/polyroots.hpp"

namespace q4 {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

using MuVector = std::array<double, 4>;

struct ModelParams {
  double kappa = 2.0;
  double b = 0.0;
  double c = 2.0;
  std::complex<double> alpha{0.0, 2.0};
  MuVector mu{};
};

/// Derives b = 4/kappa - 2, c = +sqrt(4 - b^2), alpha = b + ic.
/// Throws DomainError unless kappa is finite and > 1.
ModelParams make_params(double kappa, const MuVector& mu = {});
ModelParams with_mu(const ModelParams& params, const MuVector& mu);

enum class Form { original_rational, xy_form, cubic_form, symmetric_form };

double phi(Point p, const ModelParams& params);
double psi(Point p, const ModelParams& params);

/// original_rational: phi^2 / psi^3 (throws SingularityError at psi = 0);
/// xy_form: X^{-3} (kappa Y^3/3 + kappa Y^2 + (1 - X^2) Y - X^2 + 1/3) / (8 (2 - b));
/// cubic_form: kappa y^3/3 - x^2 y - h x^3 - (kappa - 1) y + 2(kappa - 1)/3, needs h;
/// symmetric_form: 2(kappa - 1) x^3/3 - (kappa - 1) x^2 y + kappa y^3/3 - y.
double hamiltonian(Form form, Point p, const ModelParams& params,
                   std::optional<double> h = std::nullopt);

/// (x, y) -> (X, Y) = (sqrt(psi), c x - (2 + b) y). Throws DomainError if psi <= 0.
Point coordinate_map(Point p, const ModelParams& params);

/// Cubic-chart level h = 8 (2 - b) H(X, Y) = phi / psi^{3/2} of an original point.
double level_of_point(Point p, const ModelParams& params);

inline constexpr double kCenterLevel = -2.0 / 3.0;
double saddle_level(double kappa);

struct CriticalLevels {
  double center_h;
  double saddle_h;
  Point center_point;
  Point saddle_point;
};

/// Symmetric form: center (1, 1) at h = -2/3, saddle (0, 1/sqrt(kappa)) at -2/(3 sqrt(kappa)).
CriticalLevels critical_levels(const ModelParams& params);

enum class Window { center_end, interior, saddle_end, extended, outside };
std::string_view to_string(Window w);

struct LevelPoint {
  double h = 0.0;
  double t = 0.0;  // level of the XY-form integral, h = 8 (2 - b) t
  double s = 0.0;  // 9 kappa h^2 / 4
  Window window = Window::outside;
};

/// Levels within this distance of a critical value count as the endpoint itself.
inline constexpr double kEndpointMargin = 1e-10;

LevelPoint level_classify(double h, const ModelParams& params);

/// Real roots of kappa y^3 / 3 - y = h (the y-coordinates of the poles on x = 0).
std::vector<CubicRoot> real_roots_y(double h, const ModelParams& params);

/// Cubic region F(x, y) = a y^3 + (b2 x^2 + b0) y + c3 x^3 + c0 < 0 around an
/// interior point. Both level families of interest have this shape, which
/// makes every vertical slice a depressed cubic in y.
struct CubicLevel {
  double a = 0.0;
  double b2 = 0.0;
  double b0 = 0.0;
  double c3 = 0.0;
  double c0 = 0.0;
  Point interior;

  double value(Point p) const;
  Point gradient(Point p) const;
  /// Coefficients {r^0, r^1, r^2, r^3} of F(interior + r (cos t, sin t)).
  std::array<double, 4> ray_polynomial(double theta) const;

  /// {H < h} around the center (1, 1).
  static CubicLevel symmetric(double h, double kappa);
  /// {H > -h} around (-1, -1): the point reflection of symmetric(h).
  static CubicLevel symmetric_dual(double h, double kappa);
  /// {F(x, y, h) < 0} of the cubic chart, around (1, 1).
  static CubicLevel cubic(double h, double kappa);
};

struct RayPoint {
  Point p;
  Point dp;  // derivative with respect to the ray angle
  double r = 0.0;
};

/// First boundary crossing along the ray of angle theta from the interior
/// point. Throws GeometryError if the ray does not bracket the boundary or
/// meets it tangentially (region not star-shaped from the interior point).
RayPoint ray_point(const CubicLevel& level, double theta);

struct Oval {
  enum class Orientation { positive };

  LevelPoint level;
  std::vector<Point> points;  // closed polyline, first vertex not repeated
  std::vector<double> angles;
  Orientation orientation = Orientation::positive;
  double closure_gap = 0.0;
};

/// Oval of the symmetric form at an interior level, sampled at equally spaced
/// ray angles around (1, 1). The vertex count is doubled until the enclosed
/// area (spectral trapezoid rule on the exact parametrisation) is stable to tol.
Oval oval(double h, const ModelParams& params, double tol, std::size_t min_vertices = 64);

/// Point reflection of oval(-h): the oval around (-1, -1) at level -h.
Oval dual_oval(double h, const ModelParams& params, double tol, std::size_t min_vertices = 64);

/// Polygon area of an oval (shoelace), used for sanity checks.
double polygon_area(const Oval& oval);

}  // namespace q4
