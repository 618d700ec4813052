#include "q4/analysis.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "detail/ode_loop.hpp"
#include "q4/errors.hpp"
#include "q4/quadrature.hpp"

namespace q4 {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::pair<double, double> annulus_window(const ModelParams& params, double margin) {
  return {kCenterLevel + margin, saddle_level(params.kappa) - margin};
}

// --- residue solution ------------------------------------------------------------

ResidueSolution residue_solution(double h, const ModelParams& params) {
  const auto roots = real_roots_y(h, params);
  if (roots.empty()) throw DomainError("residue_solution: no real root");
  ResidueSolution r;
  r.h = h;
  r.y0 = roots.front().value;
  r.f = residue_value(h, r.y0, params);
  return r;
}

double residue_zero_level(double kappa) { return -2.0 / 3.0 * std::sqrt(5.0 / kappa); }

namespace {

// s = 1 + t^2 turns the transformed operator into the regular equation
//   -(1 + t^2) g_tt / 4 + t g_t / 4 - 5 g / 36 = rho.
double t_of_h(double h, const ModelParams& params) {
  const double s = s_map(h, params);
  if (s < 1.0) throw DomainError("window must lie below the saddle level");
  return std::sqrt(s - 1.0);
}

double h_of_t(double t, const ModelParams& params) { return h_of_s(1.0 + t * t, params); }

using Frame = std::array<double, 4>;  // x1, x1', x2, x2' in t

void frame_rhs(const Frame& x, Frame& dx, double t) {
  const double w = 1.0 + t * t;
  dx[0] = x[1];
  dx[1] = (t * x[1] - 5.0 * x[0] / 9.0) / w;
  dx[2] = x[3];
  dx[3] = (t * x[3] - 5.0 * x[2] / 9.0) / w;
}

}  // namespace

double frame_angle_span(const ModelParams& params, std::pair<double, double> window) {
  const double t_a = t_of_h(window.second, params);
  const double t_b = t_of_h(window.first, params);
  const double t_mid = 0.5 * (t_a + t_b);
  const double cap = (t_b - t_a) / 2000.0;
  double lo = 0.0, hi = 0.0;
  for (double target : {t_a, t_b}) {
    Frame x{1.0, 0.0, 0.0, 1.0};
    double prev = 0.0;
    detail::integrate_capped(frame_rhs, x, t_mid, target, 1e-12, [cap](double) { return cap; },
                             [&](double, const Frame& v) {
                               double th = std::atan2(v[2], v[0]);
                               while (th - prev > kPi) th -= 2.0 * kPi;
                               while (th - prev < -kPi) th += 2.0 * kPi;
                               prev = th;
                               lo = std::min(lo, th);
                               hi = std::max(hi, th);
                             });
  }
  return hi - lo;
}

ChebyshevReport chebyshev_probe(const ModelParams& params, std::optional<std::pair<double, double>> window) {
  const double k = params.kappa;
  const double hs = saddle_level(k);
  ChebyshevReport rep;
  rep.kappa = k;
  rep.h_star = residue_zero_level(k);
  rep.y0_at_saddle = real_roots_y(hs, params).front().value;
  rep.y0_at_saddle_claimed = -std::sqrt(5.0 / k);

  std::vector<std::pair<std::string, std::pair<double, double>>> windows;
  if (window) {
    windows.push_back({"custom", *window});
  } else {
    windows.push_back({"annulus", annulus_window(params)});
    windows.push_back({"below_saddle", {h_of_s(1e6, params), hs - 1e-6}});
  }
  const auto f = [&](double h) { return residue_solution(h, params).f; };

  rep.h_star_located = std::numeric_limits<double>::quiet_NaN();
  rep.h_star_error = std::numeric_limits<double>::infinity();
  for (const auto& [name, w] : windows) {
    if (!(w.second < hs)) throw DomainError("chebyshev_probe: window must lie below the saddle level");
    WindowVerdict v;
    v.name = name;
    v.window = w;
    v.f_zeros = count_zeros(f, w, 400, 1e-14);
    v.contains_h_star = rep.h_star > w.first && rep.h_star < w.second;
    v.f_nonvanishing = v.f_zeros.count == 0;
    v.claim_verdict = v.f_nonvanishing ? "confirmed" : "contradicted";
    v.frame_span = frame_angle_span(params, w);
    v.chebyshev = v.frame_span < kPi;
    for (const auto& z : v.f_zeros.zeros) {
      const double err = std::abs(z.location - rep.h_star);
      if (err < rep.h_star_error) {
        rep.h_star_error = err;
        rep.h_star_located = z.location;
      }
    }
    rep.windows.push_back(std::move(v));
  }

  // L2 f by Richardson-extrapolated central differences at 20 points below the saddle.
  const double s_hi = std::max(k, 2.0) + 20.0;
  for (int q = 0; q < 20; ++q) {
    const double s = 1.2 + (s_hi - 1.2) * q / 19.0;
    const double h = h_of_s(s, params);
    const double d = 1e-3 * std::abs(h);
    const auto diff = [&](double step) {
      const double fp = f(h + step), fm = f(h - step), f0 = f(h);
      return std::pair{(fp - fm) / (2.0 * step), (fp - 2.0 * f0 + fm) / (step * step)};
    };
    const auto [d1a, d2a] = diff(d);
    const auto [d1b, d2b] = diff(0.5 * d);
    const double f1 = (4.0 * d1b - d1a) / 3.0, f2 = (4.0 * d2b - d2a) / 3.0;
    const double g = f(h);
    const double t0 = 5.0 * k * h * g, t1 = -(9.0 * k * h * h - 8.0) * f1, t2 = h * (9.0 * k * h * h - 4.0) * f2;
    const double scale = std::max({std::abs(t0), std::abs(t1), std::abs(t2)});
    const double res = std::abs(t0 + t1 + t2) / scale;
    rep.residual_points.push_back(h);
    rep.residuals.push_back(res);
    rep.max_L2_residual = std::max(rep.max_L2_residual, res);
  }
  return rep;
}

// --- bound chain ---------------------------------------------------------------------

namespace {

std::array<double, 4> basis_I(double h, double k, const Vec6& v) {
  return {h * v(0), v(1), v(2), 2.0 * v(4) + 3.0 * k * h * v(5)};
}

MuVector unit(int m) {
  MuVector e{};
  e[static_cast<std::size_t>(m)] = 1.0;
  return e;
}

std::array<double, 4> basis_G(double h, const ModelParams& p, const Vec6& d1) {
  std::array<double, 4> out;
  for (int m = 0; m < 4; ++m) out[m] = eval_G_weights(h, p.kappa, g_weights(p.kappa, unit(m)), d1);
  return out;
}

std::array<double, 4> basis_R(double h, const ModelParams& p, const PFVector& pf) {
  std::array<double, 4> out;
  for (int m = 0; m < 4; ++m) out[m] = eval_R(h, with_mu(p, unit(m)), RRoute::direct, pf);
  return out;
}

double dot(const std::array<double, 4>& b, const MuVector& mu) {
  return b[0] * mu[0] + b[1] * mu[1] + b[2] * mu[2] + b[3] * mu[3];
}

std::vector<double> combine(const std::vector<std::array<double, 4>>& basis, const MuVector& mu) {
  std::vector<double> out(basis.size());
  for (std::size_t q = 0; q < basis.size(); ++q) out[q] = dot(basis[q], mu);
  return out;
}

}  // namespace

AnnulusBasis::AnnulusBasis(const ModelParams& params, int grid, double margin)
    : params_(params),
      window_(annulus_window(params, margin)),
      grid_(chebyshev_grid(window_.first, window_.second, grid)),
      table_(params, grid_) {
  for (std::size_t q = 0; q < grid_.size(); ++q) {
    const double h = grid_[q];
    PFVector pf;
    pf.h = h;
    pf.values = table_.node_values()[q];
    pf.derivs = pf_derivatives(h, pf.values, params_);
    I_.push_back(basis_I(h, params_.kappa, pf.values));
    G_.push_back(basis_G(h, params_, pf.derivs));
    R_.push_back(basis_R(h, params_, pf));
  }
}

double AnnulusBasis::eval_I(double h, const MuVector& mu) const {
  return dot(basis_I(h, params_.kappa, table_.values_at(h)), mu);
}

double AnnulusBasis::eval_G(double h, const MuVector& mu) const {
  return dot(basis_G(h, params_, table_.pf_at(h).derivs), mu);
}

double AnnulusBasis::eval_R(double h, const MuVector& mu) const { return dot(basis_R(h, params_, table_.pf_at(h)), mu); }

std::vector<double> AnnulusBasis::grid_I(const MuVector& mu) const { return combine(I_, mu); }
std::vector<double> AnnulusBasis::grid_G(const MuVector& mu) const { return combine(G_, mu); }
std::vector<double> AnnulusBasis::grid_R(const MuVector& mu) const { return combine(R_, mu); }

double AnnulusBasis::reconstruction_error() const {
  double worst = 0.0;
  for (int m = 0; m < 4; ++m) {
    const MuVector e = unit(m);
    double scale = 0.0;
    for (const auto& b : I_) scale = std::max(scale, std::abs(b[m]));
    for (double frac : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const double h = window_.first + frac * (window_.second - window_.first);
      const auto integrand = [&](double xi) { return eval_G(xi, e) / (xi * xi); };
      double err_est = 0.0;
      const double integral = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
          integrand, kCenterLevel, h, 10, 1e-12, &err_est);
      const double rec = h * integral;
      worst = std::max(worst, std::abs(rec - eval_I(h, e)) / scale);
    }
  }
  return worst;
}

BoundReport bound_pipeline(const AnnulusBasis& basis, const MuVector& mu, double tol) {
  BoundReport rep;
  rep.kappa = basis.params().kappa;
  rep.mu = mu;
  const auto w = basis.window();
  rep.I = count_zeros_on_grid([&](double h) { return basis.eval_I(h, mu); }, w, basis.grid_I(mu), tol);
  rep.G = count_zeros_on_grid([&](double h) { return basis.eval_G(h, mu); }, w, basis.grid_G(mu), tol);
  rep.R = count_zeros_on_grid([&](double h) { return basis.eval_R(h, mu); }, w, basis.grid_R(mu), tol);
  rep.r_ok = rep.R.count <= 6;
  rep.g_ok = rep.G.count <= rep.R.count + 2;
  rep.i_ok = rep.I.count <= rep.G.count && rep.G.count <= 8;
  return rep;
}

BoundReport bound_pipeline(const ModelParams& params, int grid) {
  const AnnulusBasis basis(params, grid);
  BoundReport rep = bound_pipeline(basis, params.mu);
  rep.reconstruction_error = basis.reconstruction_error();
  return rep;
}

// --- sampling --------------------------------------------------------------------------

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial) {
  // splitmix64 finaliser over the combined key
  std::uint64_t z = seed ^ (stream * 0x9E3779B97F4A7C15ULL) ^ (trial * 0xBF58476D1CE4E5B9ULL + 0x94D049BB133111EBULL);
  for (int r = 0; r < 2; ++r) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
  }
  return z;
}

std::vector<double> random_sphere(std::uint64_t seed, int dim) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<double> v(static_cast<std::size_t>(dim));
  double norm = 0.0;
  do {
    norm = 0.0;
    for (auto& x : v) {
      x = nd(rng);
      norm += x * x;
    }
  } while (norm == 0.0);
  norm = std::sqrt(norm);
  for (auto& x : v) x /= norm;
  return v;
}

namespace {

// x1, x1', x2, x2', g, g' in t for -(1+t^2) g''/4 + t g'/4 - 5g/36 = rho(t).
using Aug = std::array<double, 6>;

struct VariationSystem {
  const ModelParams* params;
  const std::vector<double>* roots;
  double c;
  double rho(double t) const {
    const double h = h_of_t(t, *params);
    double r = c;
    for (double x : *roots) r *= h - x;
    return -r / (36.0 * params->kappa * h);
  }
  void operator()(const Aug& x, Aug& dx, double t) const {
    const double w = 1.0 + t * t;
    dx[0] = x[1];
    dx[1] = (t * x[1] - 5.0 * x[0] / 9.0) / w;
    dx[2] = x[3];
    dx[3] = (t * x[3] - 5.0 * x[2] / 9.0) / w;
    dx[4] = x[5];
    dx[5] = (t * x[5] - 5.0 * x[4] / 9.0 - 4.0 * rho(t)) / w;
  }
};

}  // namespace

VariationSummary variation_sample_test(const ModelParams& params, std::pair<double, double> window, int trials,
                               std::uint64_t seed, int grid) {
  VariationSummary sum;
  sum.kappa = params.kappa;
  sum.window = window;
  sum.frame_span = frame_angle_span(params, window);
  const double t_a = t_of_h(window.second, params), t_b = t_of_h(window.first, params);
  const double t_mid = 0.5 * (t_a + t_b);
  const auto tgrid = chebyshev_grid(t_a, t_b, grid);

  for (int tr = 0; tr < trials; ++tr) {
    std::mt19937_64 rng(trial_seed(seed, 2, static_cast<std::uint64_t>(tr)));
    std::uniform_int_distribution<int> kd(0, 6);
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    std::normal_distribution<double> nd;
    VariationTrial trial;
    trial.k = kd(rng);
    for (int q = 0; q < trial.k; ++q) trial.R_roots.push_back(window.first + (window.second - window.first) * ud(rng));
    std::sort(trial.R_roots.begin(), trial.R_roots.end());
    const VariationSystem sys{&params, &trial.R_roots, nd(rng) >= 0.0 ? 1.0 : -1.0};

    // States at the grid nodes, integrated outward from the middle.
    std::vector<Aug> states(tgrid.size());
    const auto split = static_cast<std::size_t>(std::lower_bound(tgrid.begin(), tgrid.end(), t_mid) - tgrid.begin());
    const double cap = (t_b - t_a) / 50.0;
    for (int dir : {1, -1}) {
      Aug x{1.0, 0.0, 0.0, 1.0, 0.0, 0.0};
      double t = t_mid;
      if (dir > 0) {
        for (std::size_t q = split; q < tgrid.size(); ++q) {
          detail::integrate_capped(sys, x, t, tgrid[q], 1e-12, [cap](double) { return cap; }, [](double, const Aug&) {});
          t = tgrid[q];
          states[q] = x;
        }
      } else {
        for (std::size_t q = split; q-- > 0;) {
          detail::integrate_capped(sys, x, t, tgrid[q], 1e-12, [cap](double) { return cap; }, [](double, const Aug&) {});
          t = tgrid[q];
          states[q] = x;
        }
      }
    }
    double rms_p = 0.0, rms_1 = 0.0, rms_2 = 0.0;
    for (const auto& s : states) {
      rms_p += s[4] * s[4];
      rms_1 += s[0] * s[0];
      rms_2 += s[2] * s[2];
    }
    const double c1 = nd(rng) * std::sqrt((rms_p + 1e-300) / (rms_1 + 1e-300));
    const double c2 = nd(rng) * std::sqrt((rms_p + 1e-300) / (rms_2 + 1e-300));
    const auto value = [&](const Aug& s) { return s[4] + c1 * s[0] + c2 * s[2]; };
    std::vector<double> vals(states.size());
    for (std::size_t q = 0; q < states.size(); ++q) vals[q] = value(states[q]);
    const auto G = [&](double t) {
      auto it = std::lower_bound(tgrid.begin(), tgrid.end(), t);
      std::size_t q = static_cast<std::size_t>(it - tgrid.begin());
      if (q == tgrid.size() || (q > 0 && t - tgrid[q - 1] < tgrid[q] - t)) --q;
      Aug x = states[q];
      detail::integrate_capped(sys, x, tgrid[q], t, 1e-12, [cap](double) { return cap; }, [](double, const Aug&) {});
      return value(x);
    };
    const ZeroReport zr = count_zeros_on_grid(G, {t_a, t_b}, vals, 1e-10);
    trial.count_G = zr.count;
    trial.ok = trial.count_G <= trial.k + 2;
    if (!trial.ok) ++sum.violations;
    sum.trials.push_back(std::move(trial));
  }
  return sum;
}

VnSummary vn_sample_test(int n, int trials, const ModelParams& params, std::uint64_t seed, bool winding, int grid,
                         const ContourOptions& contour) {
  if (n < 1 || n > 4) throw DomainError("vn_sample_test: n must be in 1..4");
  VnSummary sum;
  sum.n = n;
  sum.kappa = params.kappa;
  const double k = params.kappa;
  const std::pair<double, double> sw{1.0 + 1e-6, k - 1e-6};
  const auto sgrid = chebyshev_grid(sw.first, sw.second, grid);
  std::vector<double> hnodes;
  for (double s : sgrid) hnodes.push_back(h_of_s(s, params));
  const PFTable table(params, hnodes);
  std::vector<std::pair<double, double>> Jgrid;
  for (double h : hnodes) {
    const PFVector pf = table.pf_at(h);
    Jgrid.push_back({pf.derivs(0), pf.derivs(3)});
  }
  std::optional<ContourTrace> trace;
  if (winding) trace.emplace(params, contour);

  for (int tr = 0; tr < trials; ++tr) {
    const auto c = random_sphere(trial_seed(seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(tr)), 2 * n + 1);
    VnTrial t;
    t.P.assign(c.begin(), c.begin() + n + 1);
    t.Q.assign(c.begin() + n + 1, c.end());
    const PolyPair pair(t.P, t.Q, n);
    const auto F = [&](double s, double J1, double J2) {
      return std::real(pair.eval_P(s)) * J1 + std::real(pair.eval_Q(s)) * J2;
    };
    std::vector<double> vals(sgrid.size());
    for (std::size_t q = 0; q < sgrid.size(); ++q) vals[q] = F(sgrid[q], Jgrid[q].first, Jgrid[q].second);
    const auto f = [&](double s) {
      const PFVector pf = table.pf_at(h_of_s(s, params));
      return F(s, pf.derivs(0), pf.derivs(3));
    };
    const ZeroReport real = count_zeros_on_grid(f, sw, vals, 1e-10);
    t.real_zeros = real.count;
    t.real_zeros_enclosed = 0;
    for (const auto& z : real.zeros) {
      if (z.location > 1.0 + contour.epsilon) t.real_zeros_enclosed += z.multiplicity_estimate;
    }
    sum.max_real = std::max(sum.max_real, t.real_zeros);
    if (t.real_zeros > 2 * n) ++sum.exceed_real;
    if (trace) {
      try {
        t.winding = winding_count(pair, *trace);
        sum.max_winding = std::max(sum.max_winding, t.winding->winding);
        if (t.winding->exceeds_bound) ++sum.exceed_winding;
        if (t.winding->winding < t.real_zeros_enclosed) ++sum.winding_below_real;
      } catch (const Error& e) {
        t.error = e.what();
        ++sum.errors;
      }
    }
    sum.trials.push_back(std::move(t));
  }
  return sum;
}

}  // namespace q4
