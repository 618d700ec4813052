#pragma once

// The unperturbed quadratic system z' = -i z + 4 z^2 + 2 |z|^2 + alpha conj(z)^2
// and checks of its first integral along simulated orbits.

#include <complex>
#include <vector>

#include "q4/model.hpp"

namespace q4 {

std::complex<double> vector_field_rhs(std::complex<double> z, const ModelParams& params);

/// phi^2 / psi^3 at z = x + i y.
double first_integral(std::complex<double> z, const ModelParams& params);

struct OrbitSample {
  double t = 0.0;
  std::complex<double> z;
};

struct Orbit {
  std::vector<OrbitSample> samples;
  ModelParams params;
  double integrator_tol = 0.0;
};

struct OrbitOptions {
  double stride = 0.05;        // sampling interval in t
  double blowup_radius = 1e3;  // |z| beyond this is treated as escape
};

/// Adaptive RKF7(8) integration (t_end may be negative). OrbitError on blow-up.
Orbit integrate_orbit(std::complex<double> z0, double t_end, const ModelParams& params, double tol,
                      const OrbitOptions& options = {});

struct Conservation {
  double max_drift = 0.0;  // max |H(z) - H(z0)| / |H(z0)|
  double t_level = 0.0;    // the conserved value phi^2 / psi^3
  double h_level = 0.0;    // phi / psi^{3/2}, the cubic-chart level of the orbit
};

/// OrbitError if some sample leaves psi > 0.
Conservation conservation_report(const Orbit& orbit);

struct PeriodResult {
  double period = 0.0;
  double return_distance = 0.0;  // |z(period) - z0|
};

/// First return to the ray from the origin through z0. OrbitError if there is
/// no return before t_max.
PeriodResult find_period(std::complex<double> z0, const ModelParams& params, double tol, double t_max = 200.0);

struct SweepRow {
  double r = 0.0;
  double h = 0.0;
  bool closed = false;
  double period = 0.0;
  double drift = 0.0;
};

struct AnnulusSweep {
  double theta = 0.0;
  double r_boundary = 0.0;  // first r along the ray with level = saddle level
  std::vector<SweepRow> rows;
  double h_min = 0.0, h_max = 0.0;  // over closed orbits
  bool outside_closed = false;      // an orbit started just beyond the boundary returned
};

/// Initial points r e^{i theta}, r in (0, r_boundary), plus one just outside.
AnnulusSweep annulus_sweep(const ModelParams& params, int points, double theta = 0.0, double tol = 1e-11);

}  // namespace q4
