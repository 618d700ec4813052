#include "q4/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "detail/ode_loop.hpp"
#include "q4/errors.hpp"

namespace q4 {

namespace {

using State = std::array<double, 2>;
using cd = std::complex<double>;

struct Field {
  const ModelParams* params;
  double blowup;
  void operator()(const State& x, State& dx, double) const {
    const cd w = vector_field_rhs({x[0], x[1]}, *params);
    dx[0] = w.real();
    dx[1] = w.imag();
  }
};

void check_bounded(const State& x, double radius) {
  if (!(std::hypot(x[0], x[1]) <= radius)) throw OrbitError("integrate_orbit: orbit escaped (blow-up)");
}

void advance(const Field& f, State& x, double t0, double t1, double tol) {
  detail::integrate_capped(f, x, t0, t1, tol, [&](double) { return std::abs(t1 - t0); },
                           [&](double, const State& s) { check_bounded(s, f.blowup); });
}

}  // namespace

cd vector_field_rhs(cd z, const ModelParams& params) {
  return cd(0.0, -1.0) * z + 4.0 * z * z + 2.0 * std::norm(z) + params.alpha * std::conj(z) * std::conj(z);
}

double first_integral(cd z, const ModelParams& params) {
  return hamiltonian(Form::original_rational, {z.real(), z.imag()}, params);
}

Orbit integrate_orbit(cd z0, double t_end, const ModelParams& params, double tol, const OrbitOptions& options) {
  if (!(tol > 0.0)) throw DomainError("integrate_orbit: tol must be positive");
  if (!(options.stride > 0.0)) throw DomainError("integrate_orbit: stride must be positive");
  Orbit orbit;
  orbit.params = params;
  orbit.integrator_tol = tol;
  const Field f{&params, options.blowup_radius};
  State x{z0.real(), z0.imag()};
  orbit.samples.push_back({0.0, z0});
  const double dir = t_end >= 0.0 ? 1.0 : -1.0;
  const auto steps = static_cast<long long>(std::ceil(std::abs(t_end) / options.stride - 1e-12));
  double t = 0.0;
  for (long long k = 1; k <= steps; ++k) {
    const double next = k == steps ? t_end : dir * static_cast<double>(k) * options.stride;
    advance(f, x, t, next, tol);
    t = next;
    orbit.samples.push_back({t, {x[0], x[1]}});
  }
  return orbit;
}

Conservation conservation_report(const Orbit& orbit) {
  if (orbit.samples.empty()) throw OrbitError("conservation_report: empty orbit");
  const ModelParams& p = orbit.params;
  for (const auto& s : orbit.samples) {
    if (!(psi({s.z.real(), s.z.imag()}, p) > 0.0)) throw OrbitError("conservation_report: orbit leaves psi > 0");
  }
  const cd z0 = orbit.samples.front().z;
  Conservation c;
  c.t_level = first_integral(z0, p);
  c.h_level = level_of_point({z0.real(), z0.imag()}, p);
  for (const auto& s : orbit.samples) {
    const double d = std::abs(first_integral(s.z, p) - c.t_level) / std::abs(c.t_level);
    c.max_drift = std::max(c.max_drift, d);
  }
  return c;
}

PeriodResult find_period(cd z0, const ModelParams& params, double tol, double t_max) {
  if (z0 == 0.0) throw DomainError("find_period: z0 is the equilibrium");
  const Field f{&params, 1e3};
  const auto cross = [&](const State& x) { return std::imag(std::conj(z0) * cd(x[0], x[1])); };
  const auto ahead = [&](const State& x) { return std::real(std::conj(z0) * cd(x[0], x[1])) > 0.0; };
  State x{z0.real(), z0.imag()};
  double t = 0.0;
  const double dt = 0.01;
  bool left = false;  // has moved away from the section
  while (t < t_max) {
    State nx = x;
    advance(f, nx, t, t + dt, tol);
    if (std::abs(cross(nx)) > 1e-3 * std::norm(z0)) left = true;
    if (left && cross(x) > 0.0 && cross(nx) <= 0.0 && ahead(nx)) {
      double a = 0.0, b = dt;
      for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + t); ++it) {
        const double m = 0.5 * (a + b);
        State mx = x;
        advance(f, mx, t, t + m, tol);
        (cross(mx) > 0.0 ? a : b) = m;
      }
      State end = x;
      advance(f, end, t, t + b, tol);
      return {t + b, std::abs(cd(end[0], end[1]) - z0)};
    }
    x = nx;
    t += dt;
  }
  throw OrbitError("find_period: no return to the section before t_max");
}

AnnulusSweep annulus_sweep(const ModelParams& params, int points, double theta, double tol) {
  const double hs = saddle_level(params.kappa);
  const cd dir = std::polar(1.0, theta);
  const auto level = [&](double r) {
    const cd z = r * dir;
    const Point pt{z.real(), z.imag()};
    if (!(psi(pt, params) > 0.0)) return std::numeric_limits<double>::infinity();
    return level_of_point(pt, params);
  };
  AnnulusSweep sw;
  sw.theta = theta;
  double lo = 0.0, hi = 1e-3;
  while (level(hi) < hs) {
    lo = hi;
    hi *= 1.5;
    if (hi > 1e3) throw OrbitError("annulus_sweep: the ray never reaches the saddle level");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double m = 0.5 * (lo + hi);
    (level(m) < hs ? lo : hi) = m;
  }
  sw.r_boundary = lo;
  sw.h_min = INFINITY;
  sw.h_max = -INFINITY;
  for (int q = 1; q <= points; ++q) {
    // Points denser towards both ends of the ray.
    const double u = 0.5 * (1.0 - std::cos(std::numbers::pi * q / (points + 1)));
    SweepRow row;
    row.r = u * sw.r_boundary;
    row.h = level(row.r);
    try {
      const PeriodResult pr = find_period(row.r * dir, params, tol, 500.0);
      row.closed = pr.return_distance < 1e-6;
      row.period = pr.period;
      OrbitOptions opt;
      opt.stride = pr.period / 64.0;
      row.drift = conservation_report(integrate_orbit(row.r * dir, pr.period, params, tol, opt)).max_drift;
    } catch (const OrbitError&) {
      row.closed = false;
    }
    if (row.closed) {
      sw.h_min = std::min(sw.h_min, row.h);
      sw.h_max = std::max(sw.h_max, row.h);
    }
    sw.rows.push_back(row);
  }
  try {
    const PeriodResult pr = find_period(1.02 * sw.r_boundary * dir, params, tol, 100.0);
    sw.outside_closed = pr.return_distance < 1e-6;
  } catch (const OrbitError&) {
    sw.outside_closed = false;
  }
  return sw;
}

}  // namespace q4
