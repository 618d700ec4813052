#include "q4/model.hpp"

#include <boost/math/tools/roots.hpp>
#include <algorithm>
#include <cstdint>
#include <limits>
#include <cmath>
#include <numbers>
#include <string>

#include "q4/errors.hpp"

namespace q4 {

ModelParams make_params(double kappa, const MuVector& mu) {
  if (!std::isfinite(kappa) || kappa <= 1.0) {
    throw DomainError("make_params: kappa must be finite and > 1, got " + std::to_string(kappa));
  }
  ModelParams p;
  p.kappa = kappa;
  p.b = 4.0 / kappa - 2.0;
  p.c = std::sqrt(4.0 - p.b * p.b);
  p.alpha = {p.b, p.c};
  p.mu = mu;
  return p;
}

ModelParams with_mu(const ModelParams& params, const MuVector& mu) {
  ModelParams p = params;
  p.mu = mu;
  return p;
}

namespace {

double y_bar(Point p, const ModelParams& m) { return m.c * p.x - (2.0 + m.b) * p.y; }

}  // namespace

double phi(Point p, const ModelParams& m) {
  const double Y = y_bar(p, m);
  return 8.0 * p.y * (1.0 + Y) - 2.0 / 3.0 * (1.0 + m.kappa * Y * Y * Y);
}

double psi(Point p, const ModelParams& m) {
  const double Y = y_bar(p, m);
  return 1.0 - 8.0 * p.y + m.kappa * Y * Y;
}

double hamiltonian(Form form, Point p, const ModelParams& m, std::optional<double> h) {
  const double k = m.kappa;
  switch (form) {
    case Form::original_rational: {
      const double ps = psi(p, m);
      if (ps == 0.0 || std::abs(ps) < 1e-300) {
        throw SingularityError("hamiltonian: psi vanishes at the evaluation point");
      }
      const double ph = phi(p, m);
      return ph * ph / (ps * ps * ps);
    }
    case Form::xy_form: {
      const double X = p.x, Y = p.y;
      if (X == 0.0) throw SingularityError("hamiltonian: X = 0 in the XY form");
      const double poly = k / 3.0 * Y * Y * Y + k * Y * Y + (1.0 - X * X) * Y - X * X + 1.0 / 3.0;
      return poly / (8.0 * (2.0 - m.b) * X * X * X);
    }
    case Form::cubic_form: {
      if (!h) throw DomainError("hamiltonian: cubic_form needs the level h");
      const double x = p.x, y = p.y;
      return k / 3.0 * y * y * y - x * x * y - *h * x * x * x - (k - 1.0) * y +
             2.0 / 3.0 * (k - 1.0);
    }
    case Form::symmetric_form: {
      const double x = p.x, y = p.y;
      return 2.0 / 3.0 * (k - 1.0) * x * x * x - (k - 1.0) * x * x * y + k / 3.0 * y * y * y - y;
    }
  }
  throw DomainError("hamiltonian: unknown form");
}

Point coordinate_map(Point p, const ModelParams& m) {
  const double ps = psi(p, m);
  if (!(ps > 0.0)) throw DomainError("coordinate_map: psi <= 0, point outside the chart");
  return {std::sqrt(ps), y_bar(p, m)};
}

double level_of_point(Point p, const ModelParams& m) {
  const double ps = psi(p, m);
  if (!(ps > 0.0)) throw DomainError("level_of_point: psi <= 0, point outside the chart");
  return phi(p, m) / (ps * std::sqrt(ps));
}

double saddle_level(double kappa) { return -2.0 / (3.0 * std::sqrt(kappa)); }

CriticalLevels critical_levels(const ModelParams& m) {
  return {kCenterLevel, saddle_level(m.kappa), {1.0, 1.0}, {0.0, 1.0 / std::sqrt(m.kappa)}};
}

std::string_view to_string(Window w) {
  switch (w) {
    case Window::center_end: return "center_end";
    case Window::interior: return "interior";
    case Window::saddle_end: return "saddle_end";
    case Window::extended: return "extended";
    case Window::outside: return "outside";
  }
  return "?";
}

LevelPoint level_classify(double h, const ModelParams& m) {
  LevelPoint lp;
  lp.h = h;
  lp.t = h / (8.0 * (2.0 - m.b));
  lp.s = 9.0 * m.kappa * h * h / 4.0;
  const double hs = saddle_level(m.kappa);
  if (std::abs(h - kCenterLevel) <= kEndpointMargin) {
    lp.window = Window::center_end;
  } else if (std::abs(h - hs) <= kEndpointMargin) {
    lp.window = Window::saddle_end;
  } else if (h < kCenterLevel) {
    lp.window = Window::extended;
  } else if (h < hs) {
    lp.window = Window::interior;
  } else {
    lp.window = Window::outside;
  }
  return lp;
}

std::vector<CubicRoot> real_roots_y(double h, const ModelParams& m) {
  if (!std::isfinite(h)) throw DomainError("real_roots_y: h must be finite");
  return real_roots_cubic(m.kappa / 3.0, 0.0, -1.0, -h);
}

// --- CubicLevel ------------------------------------------------------------

double CubicLevel::value(Point p) const {
  return a * p.y * p.y * p.y + (b2 * p.x * p.x + b0) * p.y + c3 * p.x * p.x * p.x + c0;
}

Point CubicLevel::gradient(Point p) const {
  return {2.0 * b2 * p.x * p.y + 3.0 * c3 * p.x * p.x,
          3.0 * a * p.y * p.y + b2 * p.x * p.x + b0};
}

std::array<double, 4> CubicLevel::ray_polynomial(double theta) const {
  using P = std::array<double, 4>;
  const auto mul = [](const P& l, const P& r) {
    P out{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; i + j < 4; ++j) out[i + j] += l[i] * r[j];
    return out;
  };
  const P x{interior.x, std::cos(theta), 0.0, 0.0};
  const P y{interior.y, std::sin(theta), 0.0, 0.0};
  const P x2 = mul(x, x);
  const P y3 = mul(mul(y, y), y);
  const P x2y = mul(x2, y);
  const P x3 = mul(x2, x);
  P out{};
  for (int i = 0; i < 4; ++i) out[i] = a * y3[i] + b2 * x2y[i] + b0 * y[i] + c3 * x3[i];
  out[0] += c0;
  return out;
}

CubicLevel CubicLevel::symmetric(double h, double kappa) {
  CubicLevel l;
  l.a = kappa / 3.0;
  l.b2 = -(kappa - 1.0);
  l.b0 = -1.0;
  l.c3 = 2.0 / 3.0 * (kappa - 1.0);
  l.c0 = -h;
  l.interior = {1.0, 1.0};
  return l;
}

CubicLevel CubicLevel::symmetric_dual(double h, double kappa) {
  // {H > -h}: F = -H - h.
  CubicLevel l = symmetric(0.0, kappa);
  l.a = -l.a;
  l.b2 = -l.b2;
  l.b0 = -l.b0;
  l.c3 = -l.c3;
  l.c0 = -h;
  l.interior = {-1.0, -1.0};
  return l;
}

CubicLevel CubicLevel::cubic(double h, double kappa) {
  CubicLevel l;
  l.a = kappa / 3.0;
  l.b2 = -1.0;
  l.b0 = -(kappa - 1.0);
  l.c3 = -h;
  l.c0 = 2.0 / 3.0 * (kappa - 1.0);
  l.interior = {1.0, 1.0};
  return l;
}

namespace {

// First positive root of c0 + c1 r + c2 r^2 + c3 r^3 for c0 < 0, bracketed on the
// monotone pieces between critical points so that a tiny c3 (one huge root)
// cannot spoil the small ones. Negative if there is none, NaN on a touch.
double first_exit(const std::array<double, 4>& c) {
  const auto p = [&](double r) { return ((c[3] * r + c[2]) * r + c[1]) * r + c[0]; };
  const auto size = [&](double r) {
    return std::abs(c[0]) + std::abs(c[1] * r) + std::abs(c[2] * r * r) + std::abs(c[3] * r * r * r);
  };
  const auto solve = [&](double a, double b) {
    std::uintmax_t iters = 200;
    const auto r = boost::math::tools::toms748_solve(p, a, b, p(a), p(b),
                                                     boost::math::tools::eps_tolerance<double>(52), iters);
    return 0.5 * (r.first + r.second);
  };
  double a = 0.0;
  for (const auto& cp : real_roots_cubic(0.0, 3.0 * c[3], 2.0 * c[2], c[1], 0.0)) {
    if (!(cp.value > a)) continue;
    const double v = p(cp.value);
    if (v > 0.0) return solve(a, cp.value);
    if (std::abs(v) <= 64.0 * std::numeric_limits<double>::epsilon() * size(cp.value)) {
      return std::numeric_limits<double>::quiet_NaN();
    }
    a = cp.value;
  }
  double b = a > 0.0 ? 2.0 * a : 1.0;
  for (int k = 0; k < 1100 && std::isfinite(b); ++k, b *= 2.0) {
    if (p(b) > 0.0) return solve(a, b);
  }
  return -1.0;
}

}  // namespace

RayPoint ray_point(const CubicLevel& level, double theta) {
  const auto c = level.ray_polynomial(theta);
  if (!(c[0] < 0.0)) throw GeometryError("ray_point: ray origin is not inside the region");
  const double r = first_exit(c);
  if (std::isnan(r)) throw GeometryError("ray_point: ray is tangent to the level curve");
  if (r <= 0.0) throw GeometryError("ray_point: ray does not leave the region");

  const double cs = std::cos(theta), sn = std::sin(theta);
  RayPoint out;
  out.r = r;
  out.p = {level.interior.x + r * cs, level.interior.y + r * sn};
  const Point g = level.gradient(out.p);
  const double radial = g.x * cs + g.y * sn;
  const double gnorm = std::hypot(g.x, g.y);
  if (!(radial > 1e-10 * gnorm)) {
    throw GeometryError("ray_point: region is not star-shaped from the interior point");
  }
  const double tangential = -g.x * sn + g.y * cs;
  const double dr = -r * tangential / radial;
  out.dp = {dr * cs - r * sn, dr * sn + r * cs};
  return out;
}

// --- ovals -----------------------------------------------------------------

namespace {

void require_interior(double h, const ModelParams& m, const char* who) {
  const auto lp = level_classify(h, m);
  if (lp.window == Window::center_end || lp.window == Window::saddle_end) {
    throw DegenerateLevelError(std::string(who) + ": level is a critical value");
  }
  if (lp.window != Window::interior) {
    throw DomainError(std::string(who) + ": level outside the period annulus");
  }
}

Oval sample_oval(const CubicLevel& level, const LevelPoint& lp, double tol, std::size_t min_vertices,
                 double angle_offset) {
  if (!(tol > 0.0)) throw DomainError("oval: tol must be positive");
  std::size_t n = 16;
  while (n < min_vertices) n *= 2;
  constexpr std::size_t kMaxVertices = std::size_t{1} << 20;

  const auto area_with = [&](std::size_t count) {
    double acc = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
      const double th = angle_offset + 2.0 * std::numbers::pi * static_cast<double>(k) / count;
      const auto rp = ray_point(level, th);
      acc += rp.p.x * rp.dp.y - rp.p.y * rp.dp.x;
    }
    return 0.5 * acc * 2.0 * std::numbers::pi / static_cast<double>(count);
  };

  double prev = area_with(n);
  for (;;) {
    if (n >= kMaxVertices) throw NonconvergenceError("oval: vertex refinement did not converge");
    const double next = area_with(2 * n);
    n *= 2;
    if (std::abs(next - prev) <= tol * std::abs(next)) break;
    prev = next;
  }

  Oval out;
  out.level = lp;
  out.points.reserve(n);
  out.angles.reserve(n);
  const double scale = std::max(1.0, std::abs(level.c0));
  for (std::size_t k = 0; k < n; ++k) {
    const double th = angle_offset + 2.0 * std::numbers::pi * static_cast<double>(k) / n;
    const auto rp = ray_point(level, th);
    if (std::abs(level.value(rp.p)) > tol * scale) {
      throw GeometryError("oval: vertex residual exceeds tolerance");
    }
    out.points.push_back(rp.p);
    out.angles.push_back(th);
  }
  const auto end = ray_point(level, angle_offset + 2.0 * std::numbers::pi);
  out.closure_gap = std::hypot(end.p.x - out.points.front().x, end.p.y - out.points.front().y);
  return out;
}

}  // namespace

Oval oval(double h, const ModelParams& m, double tol, std::size_t min_vertices) {
  require_interior(h, m, "oval");
  Oval o = sample_oval(CubicLevel::symmetric(h, m.kappa), level_classify(h, m), tol, min_vertices, 0.0);
  for (const auto& p : o.points) {
    if (!(p.x > 0.0)) throw GeometryError("oval: oval reaches x <= 0");
  }
  return o;
}

Oval dual_oval(double h, const ModelParams& m, double tol, std::size_t min_vertices) {
  require_interior(h, m, "dual_oval");
  LevelPoint lp = level_classify(h, m);
  lp.h = -h;
  lp.t = -lp.t;
  return sample_oval(CubicLevel::symmetric_dual(h, m.kappa), lp, tol, min_vertices, std::numbers::pi);
}

double polygon_area(const Oval& o) {
  double acc = 0.0;
  const std::size_t n = o.points.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Point& p = o.points[k];
    const Point& q = o.points[(k + 1) % n];
    acc += p.x * q.y - q.x * p.y;
  }
  return 0.5 * acc;
}

}  // namespace q4
