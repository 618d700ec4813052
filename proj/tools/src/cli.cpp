#include "q4lab/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>

#include "q4/analysis.hpp"
#include "q4/dynamics.hpp"
#include "q4/errors.hpp"
#include "q4/melnikov.hpp"
#include "q4/reduction.hpp"
#include "q4lab/report.hpp"

namespace q4::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

constexpr std::array<std::pair<std::string_view, Command>, 8> kCommands{{{"verify", Command::verify},
                                                                         {"moments", Command::moments},
                                                                         {"zeros", Command::zeros},
                                                                         {"cheb", Command::cheb},
                                                                         {"winding", Command::winding},
                                                                         {"sweep", Command::sweep},
                                                                         {"dyn", Command::dyn},
                                                                         {"coeffs", Command::coeffs}}};

double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

std::vector<double> interior_levels(const ModelParams& p, std::initializer_list<double> fractions) {
  const double hs = saddle_level(p.kappa);
  std::vector<double> out;
  for (double f : fractions) out.push_back(kCenterLevel + f * (hs - kCenterLevel));
  return out;
}

MuVector config_mu(const RunConfig& cfg, std::uint64_t stream) {
  if (cfg.mu_mode == MuMode::explicit_mu && cfg.mu) return *cfg.mu;
  const auto v = random_sphere(trial_seed(cfg.seed, stream, 0), 4);
  return {v[0], v[1], v[2], v[3]};
}

std::string mu_label(const MuVector& mu) {
  return fmt::format("{};{};{};{}", format_number(mu[0]), format_number(mu[1]), format_number(mu[2]),
                     format_number(mu[3]));
}

const std::array<MomentIndex, 6> kBasic{MomentIndex{0, 0}, MomentIndex{1, 0}, MomentIndex{0, 1},
                                        MomentIndex{1, 1}, MomentIndex{-1, 0}, MomentIndex{-1, 1}};

std::string index_label(const MomentIndex& m) {
  return fmt::format("I[{},{}]{}", m.i, m.j, m.form == MomentForm::cubic_form ? "c" : "");
}

// --- verify ---------------------------------------------------------------------------

void verify_kappa(double k, const RunConfig& cfg, std::size_t idx, Report& rep) {
  const MuVector mu = config_mu(cfg, 100 + idx);
  const ModelParams p = make_params(k, mu);
  const auto levels = interior_levels(p, {0.1, 0.3, 0.5, 0.7, 0.9});

  for (double h : levels) {
    const auto g = moments(kBasic, h, p, Method::green, 1e-12);
    const auto a = moments(kBasic, h, p, Method::area2d, 1e-12);
    for (std::size_t q = 0; q < kBasic.size(); ++q) {
      rep.add(k, h, "oracle:" + index_label(kBasic[q]), rel(g[q].value, a[q].value), 1e-6);
    }
  }

  const double hm = levels[2];
  for (int i = -6; i <= 3; ++i) {
    for (int j = 0; j <= 3; ++j) {
      for (auto kind : {RecurrenceKind::dx, RecurrenceKind::dy}) {
        const Residual r = recurrence_residual(kind, i, j, hm, p);
        rep.add(k, hm, fmt::format("recurrence:{}:{},{}", kind == RecurrenceKind::dx ? "dx" : "dy", i, j),
                r.relative(), 1e-6);
      }
    }
  }
  {
    const std::array<MomentIndex, 2> idx{MomentIndex{-6, 2, MomentForm::cubic_form},
                                         MomentIndex{-6, 1, MomentForm::cubic_form}};
    const auto v = moments(idx, hm, p, Method::green, 1e-12);
    rep.add(k, hm, "identity:I[-6,2]c=I[-6,1]c", rel(v[0].value, v[1].value), 1e-6);
  }
  for (auto [i, j] : {std::pair{0, 0}, {-6, 1}, {-2, 0}, {-4, 2}}) {
    rep.add(k, hm, fmt::format("inversion:{},{}", i, j), inversion_check(i, j, hm, p).relative(), 1e-8);
  }
  for (const MomentIndex idx : {MomentIndex{1, 2}, MomentIndex{3, 0}, MomentIndex{0, 3}, MomentIndex{-1, 4}}) {
    const double direct = moment(idx, hm, p, Method::green, 1e-12).value;
    rep.add(k, hm, "reduction:" + index_label(idx), rel(moment_reduce(idx, p).evaluate(hm, p), direct), 1e-8);
  }

  const double ref = assemble_I(hm, p, Route::basic);
  for (auto [route, name] : {std::pair{Route::cubic_shifted, "cubic_shifted"}, {Route::cubic, "cubic"}, {Route::symmetric, "symmetric"}}) {
    rep.add(k, hm, fmt::format("route:{}", name), rel(assemble_I(hm, p, route), ref), 1e-8);
  }

  const auto window = annulus_window(p);
  const double mid = 0.5 * (window.first + window.second);
  const PFVector pf_mid = oracle_pf_vector(mid, p);
  const RCoefficients& coeffs = extract_R_coeffs(p);
  for (double h : levels) {
    const PFVector pf = oracle_pf_vector(h, p);
    rep.add(k, h, "pf:solve_residual", pf_residuals(pf, p).cwiseAbs().maxCoeff() / pf.values.cwiseAbs().maxCoeff(),
            1e-12);
    const double d = 1e-4 * std::abs(h);
    PFVector fd = pf;
    fd.derivs = (oracle_pf_vector(h + d, p).values - oracle_pf_vector(h - d, p).values) / (2.0 * d);
    rep.add(k, h, "pf:fd_residual", pf_residuals(fd, p).cwiseAbs().maxCoeff() / pf.values.cwiseAbs().maxCoeff(),
            1e-4);
    const Vec6 prop = propagate(mid, pf_mid.values, h, p);
    rep.add(k, h, "pf:propagation", ((prop - pf.values).cwiseAbs().array() / pf.values.cwiseAbs().array()).maxCoeff(),
            1e-6);

    const PFSolve s = pf_derivatives_full(h, pf.values, p);
    const auto r = pfs_residuals(h, s.d1(0), s.d1(3), s.d2(0), s.d2(3), p);
    const double sc = std::max(std::abs(3.0 * k * h * s.d1(0)), std::abs(3.0 * k * h * s.d1(3)));
    rep.add(k, h, "pfs:closure", std::max(std::abs(r[0]), std::abs(r[1])) / sc, 1e-8);
    const auto m = pf_minus_residuals(h, s.d1, s.d2, p);
    rep.add(k, h, "pf_minus:residual",
            std::max(std::abs(m[0]) / std::abs(s.d1(4)), std::abs(m[1]) / std::abs(s.d1(5))), 1e-6);
    const auto l2j = l2j_identity(h, s, p);
    rep.add(k, h, "l2j:identity", rel(l2j[0], l2j[1]), 1e-6);

    const double G = eval_G(h, p, pf);
    const double Iv = assemble_I(h, p, Route::basic);
    const double Ip = mu[0] * (pf.values(0) + h * pf.derivs(0)) + mu[1] * pf.derivs(1) + mu[2] * pf.derivs(2) +
                      mu[3] * (2.0 * pf.derivs(4) + 3.0 * k * pf.values(5) + 3.0 * k * h * pf.derivs(5));
    rep.add(k, h, "G:L1_of_I", rel(G, apply_L1(Iv, Ip, h)), 1e-8);

    const double rd = eval_R(h, p, RRoute::direct, pf);
    const double rn = eval_R(h, p, RRoute::pf_numeric, pf);
    rep.add(k, h, "R:dual_route", rel(rd, rn), 1e-6);
    rep.add(k, h, "R:coefficients", rel(coeffs.eval_R(h, k, mu, pf.derivs(0), pf.derivs(3)), rd), 1e-10);
  }
}

// --- commands ---------------------------------------------------------------------------

int cmd_verify(const RunConfig& cfg, std::ostream& log) {
  Report rep;
  for (std::size_t i = 0; i < cfg.kappa_list.size(); ++i) verify_kappa(cfg.kappa_list[i], cfg, i, rep);
  rep.write(cfg.output_dir / "residuals.csv");
  log << "verify: " << rep.rows() << " checks, " << rep.failures() << " outside tolerance\n";
  return rep.failures() == 0 ? 0 : 2;
}

int cmd_moments(const RunConfig& cfg, std::ostream& log) {
  Report rep;
  for (double k : cfg.kappa_list) {
    const ModelParams p = make_params(k);
    const auto window = annulus_window(p, 1e-3);
    for (int q = 0; q < 12; ++q) {
      const double h = window.first + (window.second - window.first) * (q + 0.5) / 12.0;
      const auto g = moments(kBasic, h, p, Method::green, cfg.tol);
      const auto a = moments(kBasic, h, p, Method::area2d, cfg.tol);
      for (std::size_t m = 0; m < kBasic.size(); ++m) {
        rep.note(k, h, index_label(kBasic[m]) + ":green", g[m].value);
        rep.note(k, h, index_label(kBasic[m]) + ":area2d", a[m].value);
        rep.add(k, h, index_label(kBasic[m]) + ":rel_diff", rel(g[m].value, a[m].value), 1e-6);
      }
    }
  }
  rep.write(cfg.output_dir / "moments.csv");
  log << "moments: " << rep.rows() << " rows, " << rep.failures() << " disagreements\n";
  return rep.failures() == 0 ? 0 : 2;
}

void add_bound_rows(Report& rep, const BoundReport& b, const std::string& prefix) {
  rep.add(b.kappa, kNaN, prefix + "count_R", b.R.count, 6.0, b.r_ok);
  rep.add(b.kappa, kNaN, prefix + "count_G", b.G.count, b.R.count + 2.0, b.g_ok);
  rep.add(b.kappa, kNaN, prefix + "count_I", b.I.count, std::min(b.G.count, 8), b.i_ok);
}

int cmd_zeros(const RunConfig& cfg, std::ostream& log) {
  Report rep;
  for (std::size_t i = 0; i < cfg.kappa_list.size(); ++i) {
    const double k = cfg.kappa_list[i];
    const MuVector mu = config_mu(cfg, 200 + i);
    const ModelParams p = make_params(k, mu);
    const AnnulusBasis basis(p, cfg.grid);
    const BoundReport b = bound_pipeline(basis, mu, cfg.tol);
    rep.note(k, kNaN, "mu=" + mu_label(mu), 0.0);
    add_bound_rows(rep, b, "");
    for (const auto* zr : {&b.I, &b.G, &b.R}) {
      const char* name = zr == &b.I ? "I" : zr == &b.G ? "G" : "R";
      for (const auto& z : zr->zeros) {
        rep.note(k, z.location, fmt::format("{}_zero:multiplicity", name), z.multiplicity_estimate);
      }
    }
    rep.add(k, kNaN, "I_reconstruction", basis.reconstruction_error(), 1e-6);
  }
  rep.write(cfg.output_dir / "zeros.csv");
  log << "zeros: " << rep.failures() << " violations\n";
  return rep.failures() == 0 ? 0 : 2;
}

int cmd_cheb(const RunConfig& cfg, std::ostream& log) {
  Report rep;
  for (double k : cfg.kappa_list) {
    const ModelParams p = make_params(k);
    const ChebyshevReport c = chebyshev_probe(p);
    rep.add(k, c.h_star, "h_star:located_error", c.h_star_error, 1e-8);
    rep.add(k, saddle_level(k), "y0_at_saddle:computed_minus_claimed", c.y0_at_saddle - c.y0_at_saddle_claimed, 1e-12);
    for (std::size_t q = 0; q < c.residuals.size(); ++q) {
      rep.add(k, c.residual_points[q], "L2_f:fd_residual", c.residuals[q], 1e-6);
    }
    for (const auto& w : c.windows) {
      rep.note(k, w.window.first, w.name + ":window_lo", w.window.first);
      rep.note(k, w.window.second, w.name + ":window_hi", w.window.second);
      rep.note(k, c.h_star, w.name + ":contains_h_star", w.contains_h_star ? 1.0 : 0.0);
      rep.add(k, c.h_star, w.name + ":f_nonvanishing_" + w.claim_verdict, w.f_zeros.count, 0.0, w.f_nonvanishing);
      rep.add(k, kNaN, w.name + ":frame_angle_span", w.frame_span, std::numbers::pi, w.chebyshev);
    }
    log << fmt::format("cheb kappa={}: h*={} ", format_number(k), format_number(c.h_star));
    for (const auto& w : c.windows) log << w.name << "=" << w.claim_verdict << " ";
    log << "\n";
  }
  rep.write(cfg.output_dir / "cheb.csv");
  log << "cheb: " << rep.failures() << " findings flagged\n";
  return rep.failures() == 0 ? 0 : 2;
}

int cmd_winding(const RunConfig& cfg, std::ostream& log) {
  Report rep("s");
  for (double k : cfg.kappa_list) {
    const ModelParams p = make_params(k);
    for (double th : {std::numbers::pi / 4.0, std::numbers::pi / 2.0, 3.0 * std::numbers::pi / 4.0}) {
      const ExponentFit fit = fit_infinity_exponents(p, th);
      rep.add(k, kNaN, fmt::format("exponent_max:theta={}", format_number(th)), fit.slope_max - 1.0 / 6.0, 1e-3);
      rep.add(k, kNaN, fmt::format("exponent_min:theta={}", format_number(th)), fit.slope_min + 1.0 / 6.0, 1e-3);
    }
    ContourOptions opt;
    opt.epsilon = cfg.epsilon;
    for (int n : cfg.n_list) {
      const VnSummary s = vn_sample_test(n, cfg.trials, p, cfg.seed, true, cfg.grid, opt);
      for (std::size_t t = 0; t < s.trials.size(); ++t) {
        const VnTrial& tr = s.trials[t];
        const std::string tag = fmt::format("n={}:trial={}", n, t);
        rep.add(k, kNaN, tag + ":real_zeros", tr.real_zeros, 2.0 * n);
        if (tr.winding) {
          rep.add(k, kNaN, tag + ":winding", tr.winding->winding, 2.0 * n);
          rep.add(k, kNaN, tag + ":integrality", tr.winding->integrality_residual, 0.2);
          rep.add(k, kNaN, tag + ":winding_minus_real", tr.winding->winding - tr.real_zeros_enclosed,
                  INFINITY, tr.winding->winding >= tr.real_zeros_enclosed);
        } else {
          rep.add(k, kNaN, tag + ":winding_error", 1.0, 0.0, false);
        }
      }
      log << fmt::format("winding kappa={} n={}: max real {} max winding {} errors {}\n", format_number(k), n,
                         s.max_real, s.max_winding, s.errors);
    }
  }
  rep.write(cfg.output_dir / "winding.csv");
  log << "winding: " << rep.failures() << " violations\n";
  return rep.failures() == 0 ? 0 : 2;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& log) {
  Report rep;
  for (std::size_t i = 0; i < cfg.kappa_list.size(); ++i) {
    const double k = cfg.kappa_list[i];
    const ModelParams p = make_params(k);
    const AnnulusBasis basis(p, cfg.grid);
    int max_r = 0, max_g = 0, max_i = 0, violations = 0;
    for (int t = 0; t < cfg.trials; ++t) {
      const auto v = random_sphere(trial_seed(cfg.seed, 1000 + i, static_cast<std::uint64_t>(t)), 4);
      const MuVector mu{v[0], v[1], v[2], v[3]};
      const BoundReport b = bound_pipeline(basis, mu, cfg.tol);
      add_bound_rows(rep, b, fmt::format("trial={}:", t));
      max_r = std::max(max_r, b.R.count);
      max_g = std::max(max_g, b.G.count);
      max_i = std::max(max_i, b.I.count);
      violations += b.violation();
    }
    rep.note(k, kNaN, "max_count_R", max_r);
    rep.note(k, kNaN, "max_count_G", max_g);
    rep.note(k, kNaN, "max_count_I", max_i);
    rep.add(k, kNaN, "chain_violations", violations, 0.0);
    log << fmt::format("sweep kappa={}: {} trials, max counts R/G/I = {}/{}/{}, violations {}\n", format_number(k),
                       cfg.trials, max_r, max_g, max_i, violations);
  }
  rep.write(cfg.output_dir / "sweep.csv");
  return rep.failures() == 0 ? 0 : 2;
}

int cmd_dyn(const RunConfig& cfg, std::ostream& log) {
  std::ofstream out(cfg.output_dir / "orbit.csv", std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write orbit.csv");
  out << "kappa,h,t,re_z,im_z,quantity,value,tolerance,status\n";
  int failures = 0;
  const auto row = [&](double k, double h, double t, std::complex<double> z, const std::string& q, double v,
                       double tol, bool pass) {
    out << fmt::format("{},{},{},{},{},{},{},{},{}\n", format_number(k), format_number(h), format_number(t),
                       format_number(z.real()), format_number(z.imag()), q, format_number(v), format_number(tol),
                       pass ? "pass" : "flag");
    if (!pass) ++failures;
  };
  const std::complex<double> nanz(kNaN, kNaN);
  for (std::size_t i = 0; i < cfg.kappa_list.size(); ++i) {
    const double k = cfg.kappa_list[i];
    const ModelParams p = make_params(k);
    const AnnulusSweep sweep = annulus_sweep(p, 8);
    const std::complex<double> z0(0.5 * sweep.r_boundary, 0.0);
    const PeriodResult pr = find_period(z0, p, 1e-12);
    OrbitOptions opt;
    opt.stride = pr.period / 32.0;
    const Orbit orbit = integrate_orbit(z0, cfg.periods * pr.period, p, 1e-12, opt);
    const Conservation c = conservation_report(orbit);
    const double H0 = c.t_level;
    for (const auto& s : orbit.samples) {
      const double d = std::abs(first_integral(s.z, p) - H0) / std::abs(H0);
      row(k, c.h_level, s.t, s.z, "H_drift", d, 1e-8, d <= 1e-8);
    }
    row(k, c.h_level, kNaN, z0, "period_return_distance", pr.return_distance, 1e-6, pr.return_distance <= 1e-6);
    row(k, c.h_level, kNaN, z0, "max_H_drift", c.max_drift, 1e-8, c.max_drift <= 1e-8);
    const double H00 = first_integral(0.0, p);
    row(k, kCenterLevel, 0.0, 0.0, "H_at_origin_minus_4/9", H00 - 4.0 / 9.0, 1e-15, std::abs(H00 - 4.0 / 9.0) <= 1e-15);
    const auto window = level_classify(c.h_level, p).window;
    row(k, c.h_level, kNaN, z0, "orbit_level_interior", window == Window::interior ? 1.0 : 0.0, 1.0,
        window == Window::interior);
    const Orbit back = integrate_orbit(orbit.samples.back().z, -orbit.samples.back().t, p, 1e-12, opt);
    const double rev = std::abs(back.samples.back().z - z0);
    row(k, c.h_level, kNaN, z0, "time_reversal", rev, 1e-9, rev <= 1e-9);
    row(k, sweep.h_max, kNaN, nanz, "sweep_top_minus_saddle", saddle_level(k) - sweep.h_max, 1e-2,
        saddle_level(k) - sweep.h_max <= 1e-2 && sweep.h_max < saddle_level(k));
    row(k, sweep.h_min, kNaN, nanz, "sweep_bottom_minus_center", sweep.h_min - kCenterLevel, 1e-2,
        sweep.h_min - kCenterLevel <= 1e-2 && sweep.h_min > kCenterLevel);
    std::mt19937_64 rng(trial_seed(cfg.seed, 400 + i, 0));
    std::uniform_real_distribution<double> box(-3.0, 3.0);
    double worst = 0.0;
    for (int accepted = 0; accepted < 100;) {
      const Point q{box(rng), box(rng)};
      if (!(psi(q, p) > 0.0 && phi(q, p) < 0.0)) continue;
      ++accepted;
      const double H = hamiltonian(Form::xy_form, coordinate_map(q, p), p);
      worst = std::max(worst, rel(first_integral({q.x, q.y}, p), 64.0 * (2.0 - p.b) * (2.0 - p.b) * H * H));
    }
    row(k, kNaN, kNaN, nanz, "first_integral_correspondence", worst, 1e-10, worst <= 1e-10);
    row(k, kNaN, kNaN, nanz, "orbit_beyond_boundary_closed", sweep.outside_closed ? 1.0 : 0.0, 0.0,
        !sweep.outside_closed);
    log << fmt::format("dyn kappa={}: period {} drift {}\n", format_number(k), format_number(pr.period),
                       format_number(c.max_drift));
  }
  log << "dyn: " << failures << " checks outside tolerance\n";
  return failures == 0 ? 0 : 2;
}

int cmd_coeffs(const RunConfig& cfg, std::ostream& log) {
  const RCoefficients& c = extract_R_coeffs(make_params(cfg.kappa_list.front()));
  std::ofstream out(cfg.output_dir / "coeffs.txt", std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write coeffs.txt");
  out << c.to_text();
  for (std::size_t i = 0; i < cfg.kappa_list.size(); ++i) {
    const double k = cfg.kappa_list[i];
    const MuVector mu = config_mu(cfg, 300 + i);
    const auto n = c.evaluate(k, mu);
    out << "kappa=" << format_number(k) << " mu=" << mu_label(mu);
    for (int j = 0; j < 4; ++j) out << " a" << j << "=" << format_number(n.a[j]);
    for (int j = 0; j < 3; ++j) out << " b" << j << "=" << format_number(n.b[j]);
    out << "\n";
  }
  log << "coeffs: written\n";
  return 0;
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  for (const auto& [n, c] : kCommands) {
    if (n == name) return c;
  }
  return std::nullopt;
}

std::string_view to_string(Command c) {
  for (const auto& [n, cmd] : kCommands) {
    if (cmd == c) return n;
  }
  return "?";
}

int run(Command command, const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  std::filesystem::create_directories(cfg.output_dir);
  switch (command) {
    case Command::verify: return cmd_verify(cfg, log);
    case Command::moments: return cmd_moments(cfg, log);
    case Command::zeros: return cmd_zeros(cfg, log);
    case Command::cheb: return cmd_cheb(cfg, log);
    case Command::winding: return cmd_winding(cfg, log);
    case Command::sweep: return cmd_sweep(cfg, log);
    case Command::dyn: return cmd_dyn(cfg, log);
    case Command::coeffs: return cmd_coeffs(cfg, log);
  }
  return 1;
}

int main_entry(int argc, char** argv) {
  CLI::App app{"q4lab: numerical checks for the codimension-four quadratic center"};
  std::string command, config, mu, out, n_list;
  std::vector<double> kappas;
  int trials = 0, grid = 0, periods = 0;
  std::uint64_t seed = 0;
  double tol = 0.0, epsilon = 0.0;
  app.add_option("command", command, "verify|moments|zeros|cheb|winding|sweep|dyn|coeffs")->required();
  app.add_option("--config", config, "key=value config file");
  app.add_option("--kappa", kappas, "kappa value (repeatable)")->take_all();
  auto* o_mu = app.add_option("--mu", mu, "weights a,b,c,d");
  auto* o_trials = app.add_option("--trials", trials, "number of random trials");
  auto* o_seed = app.add_option("--seed", seed, "64-bit seed");
  auto* o_tol = app.add_option("--tol", tol, "tolerance");
  auto* o_grid = app.add_option("--grid", grid, "grid size");
  auto* o_out = app.add_option("--out", out, "output directory");
  auto* o_n = app.add_option("--n", n_list, "degrees n for winding, e.g. 1,2,3");
  auto* o_eps = app.add_option("--epsilon", epsilon, "small-circle radius for winding");
  auto* o_periods = app.add_option("--periods", periods, "periods for dyn");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  try {
    const auto cmd = parse_command(command);
    if (!cmd) throw ConfigError("unknown command '" + command + "'");
    RunConfig cfg;
    if (!config.empty()) load_config_file(cfg, config);
    if (!kappas.empty()) cfg.kappa_list = kappas;
    if (*o_mu) apply_setting(cfg, "mu", mu);
    if (*o_trials) cfg.trials = trials;
    if (*o_seed) cfg.seed = seed;
    if (*o_tol) cfg.tol = tol;
    if (*o_grid) cfg.grid = grid;
    if (*o_out) cfg.output_dir = out;
    if (*o_n) apply_setting(cfg, "n", n_list);
    if (*o_eps) cfg.epsilon = epsilon;
    if (*o_periods) cfg.periods = periods;
    return run(*cmd, cfg, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "q4lab: error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace q4::cli
