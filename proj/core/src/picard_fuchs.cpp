#include "q4/picard_fuchs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "detail/ode_loop.hpp"
#include "q4/errors.hpp"

namespace q4 {

Mat6 pf_matrix(double h, double kappa) {
  const double k = kappa;
  Mat6 M = Mat6::Zero();
  M(0, 0) = 1.5 * h;
  M(0, 2) = 1.0;
  M(1, 1) = h;
  M(1, 3) = 2.0 / 3.0;
  M(2, 0) = 2.0 / (3.0 * k);
  M(2, 2) = h;
  M(2, 3) = 2.0 * (k - 1.0) / (3.0 * k);
  M(3, 0) = 0.375 * h;
  M(3, 1) = 0.5;
  M(3, 2) = 0.25;
  M(3, 3) = 0.75 * h;
  M(4, 4) = 3.0 * h;
  M(4, 5) = 2.0;
  M(5, 1) = (k - 1.0) / k;
  M(5, 4) = 1.0 / k;
  M(5, 5) = 1.5 * h;
  return M;
}

Mat6 pf_matrix_slope() {
  Mat6 D = Mat6::Zero();
  D(0, 0) = 1.5;
  D(1, 1) = 1.0;
  D(2, 2) = 1.0;
  D(3, 0) = 0.375;
  D(3, 3) = 0.75;
  D(4, 4) = 3.0;
  D(5, 5) = 1.5;
  return D;
}

Vec6 pf_residuals(const PFVector& pf, const ModelParams& params) {
  return pf.values - pf_matrix(pf.h, params.kappa) * pf.derivs;
}

namespace {

struct Factored {
  Eigen::PartialPivLU<Mat6> lu;
  double condition;
};

Factored factor(double h, double kappa) {
  const Mat6 M = pf_matrix(h, kappa);
  Eigen::JacobiSVD<Mat6> svd(M);
  const auto& sv = svd.singularValues();
  const double cond = sv(5) > 0.0 ? sv(0) / sv(5) : INFINITY;
  if (!(cond <= kMaxPFCondition)) {
    throw SingularMatrixError("pf_derivatives: M(h) is singular at h = " + std::to_string(h), cond);
  }
  return {M.partialPivLu(), cond};
}

}  // namespace

Vec6 pf_derivatives(double h, const Vec6& values, const ModelParams& params) {
  return factor(h, params.kappa).lu.solve(values);
}

PFSolve pf_derivatives_full(double h, const Vec6& values, const ModelParams& params) {
  const Factored f = factor(h, params.kappa);
  const Mat6 D = pf_matrix_slope();
  PFSolve out;
  out.condition = f.condition;
  out.d1 = f.lu.solve(values);
  out.d2 = f.lu.solve(out.d1 - D * out.d1);
  out.d3 = f.lu.solve(out.d2 - 2.0 * D * out.d2);
  return out;
}

PFVector oracle_pf_vector(double h, const ModelParams& params, Method method, double tol) {
  static const std::array<MomentIndex, 6> idx{MomentIndex{0, 0}, MomentIndex{1, 0}, MomentIndex{0, 1},
                                              MomentIndex{1, 1}, MomentIndex{-1, 0}, MomentIndex{-1, 1}};
  const auto mv = moments(idx, h, params, method, tol);
  PFVector pf;
  pf.h = h;
  for (int q = 0; q < 6; ++q) pf.values(q) = mv[q].value;
  pf.derivs = pf_derivatives(h, pf.values, params);
  return pf;
}

std::array<double, 4> pf_singular_levels(double kappa) {
  const double hs = 2.0 / (3.0 * std::sqrt(kappa));
  return {-2.0 / 3.0, -hs, hs, 2.0 / 3.0};
}

Vec6 propagate(double from_h, const Vec6& values0, double to_h, const ModelParams& params, double tol) {
  if (!(tol > 0.0)) throw DomainError("propagate: tol must be positive");
  const double lo = std::min(from_h, to_h), hi = std::max(from_h, to_h);
  for (double hc : pf_singular_levels(params.kappa)) {
    const double margin = 1e-12;
    if (hc >= lo - margin && hc <= hi + margin) {
      throw SingularityCrossingError("propagate: path [" + std::to_string(lo) + ", " +
                                     std::to_string(hi) + "] meets the singular level " +
                                     std::to_string(hc));
    }
  }
  using State = std::array<double, 6>;
  State x;
  for (int q = 0; q < 6; ++q) x[q] = values0(q);
  if (from_h == to_h) return values0;
  const double k = params.kappa;
  auto sys = [k](const State& v, State& dv, double h) {
    const Vec6 V = Eigen::Map<const Vec6>(v.data());
    const Vec6 d = pf_matrix(h, k).partialPivLu().solve(V);
    for (int q = 0; q < 6; ++q) dv[q] = d(q);
  };
  const double span = hi - lo;
  detail::integrate_capped(sys, x, from_h, to_h, tol, [span](double) { return span; },
                           [](double, const State&) {});
  Vec6 out;
  for (int q = 0; q < 6; ++q) out(q) = x[q];
  return out;
}

// --- PFTable -----------------------------------------------------------------

PFTable::PFTable(const ModelParams& params, std::vector<double> nodes, double tol)
    : params_(params), nodes_(std::move(nodes)), tol_(tol) {
  std::sort(nodes_.begin(), nodes_.end());
  const double hs = saddle_level(params.kappa);
  for (double h : nodes_) {
    if (!(h > kCenterLevel && h < hs)) throw DomainError("PFTable: node outside the annulus");
  }
  const double mid = 0.5 * (kCenterLevel + hs);
  const Vec6 v_mid = oracle_pf_vector(mid, params).values;
  values_.resize(nodes_.size());
  const auto split = std::lower_bound(nodes_.begin(), nodes_.end(), mid) - nodes_.begin();
  double h = mid;
  Vec6 v = v_mid;
  for (auto q = split; q < static_cast<std::ptrdiff_t>(nodes_.size()); ++q) {
    v = propagate(h, v, nodes_[q], params_, tol_);
    h = nodes_[q];
    values_[q] = v;
  }
  h = mid;
  v = v_mid;
  for (auto q = split - 1; q >= 0; --q) {
    v = propagate(h, v, nodes_[q], params_, tol_);
    h = nodes_[q];
    values_[q] = v;
  }
}

Vec6 PFTable::values_at(double h) const {
  if (nodes_.empty()) throw DomainError("PFTable: empty table");
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), h);
  std::size_t q = static_cast<std::size_t>(it - nodes_.begin());
  if (q == nodes_.size() || (q > 0 && std::abs(nodes_[q - 1] - h) < std::abs(nodes_[q] - h))) --q;
  if (nodes_[q] == h) return values_[q];
  return propagate(nodes_[q], values_[q], h, params_, tol_);
}

PFVector PFTable::pf_at(double h) const {
  PFVector pf;
  pf.h = h;
  pf.values = values_at(h);
  pf.derivs = pf_derivatives(h, pf.values, params_);
  return pf;
}

// --- two-dimensional systems and operators -----------------------------------

namespace {

void check_poles(double h, double kappa, const char* who) {
  const double a = 9.0 * h * h - 4.0;
  const double b = 9.0 * kappa * h * h - 4.0;
  if (std::abs(a) < 1e-12 || std::abs(b) < 1e-12) {
    throw PoleError(std::string(who) + ": pole at h = " + std::to_string(h));
  }
}

}  // namespace

std::array<double, 2> derivative_formulas(DerivOrder order, double h, double J1, double J2,
                                          const ModelParams& params) {
  const double k = params.kappa;
  check_poles(h, k, "derivative_formulas");
  const double a = 9.0 * h * h - 4.0;
  const double b = 9.0 * k * h * h - 4.0;
  const double h2 = h * h, h4 = h2 * h2;
  if (order == DerivOrder::second) {
    return {(-3.0 * h * b * J1 + 12.0 * (k - 1.0) * h * J2) / (a * b), (-3.0 * h * J1 + 3.0 * h * J2) / a};
  }
  const double d00 = (324.0 * k * h4 + (72.0 * k - 108.0) * h2 - 48.0) / (a * a * b);
  const double d01 = -12.0 * (k - 1.0) * (243.0 * k * h4 - 36.0 * (k + 1.0) * h2 - 16.0) / (a * a * b * b);
  const double d10 = (27.0 * h2 + 12.0) / (a * a);
  const double d11 = -(162.0 * k * h4 + (144.0 * k - 108.0) * h2 - 48.0) / (a * a * b);
  return {d00 * J1 + d01 * J2, d10 * J1 + d11 * J2};
}

std::array<double, 2> pfs_residuals(double h, double J1, double J2, double J1p, double J2p,
                                    const ModelParams& params) {
  const double k = params.kappa;
  const double b = 9.0 * k * h * h - 4.0;
  return {b * J1p - 4.0 * (k - 1.0) * J2p + 3.0 * k * h * J1, b * (J1p - J2p) + 3.0 * k * h * J2};
}

std::array<double, 2> pf_minus_residuals(double h, const Vec6& d1, const Vec6& d2,
                                         const ModelParams& params) {
  const double k = params.kappa;
  return {d1(4) - (-1.5 * h * d2(4) - d2(5)),
          d1(5) - (-2.0 / k * d2(4) - 3.0 * h * d2(5) + 4.0 * (k - 1.0) / (3.0 * k * h) * d2(3))};
}

std::array<double, 2> l2j_identity(double h, const PFSolve& s, const ModelParams& params) {
  const double k = params.kappa;
  const double c = 3.0 * k * h * h - 4.0, c1 = 6.0 * k * h, c2 = 6.0 * k;
  const double J = -4.0 * h * s.d1(4) + c * s.d1(5);
  const double J1 = -4.0 * s.d1(4) - 4.0 * h * s.d2(4) + c1 * s.d1(5) + c * s.d2(5);
  const double J2 = -8.0 * s.d2(4) - 4.0 * h * s.d3(4) + c2 * s.d1(5) + 2.0 * c1 * s.d2(5) + c * s.d3(5);
  const double rhs = 4.0 / 3.0 * (k - 1.0) *
                     (h * (9.0 * k * h * h - 4.0) * s.d3(3) + (6.0 * k * h * h + 8.0) * s.d2(3));
  return {apply_L2(J, J1, J2, h, params), rhs};
}

double apply_L1(double I_value, double I_prime, double h) { return h * I_prime - I_value; }

double apply_L2(double g, double g1, double g2, double h, const ModelParams& params) {
  const double k = params.kappa;
  return 5.0 * k * h * g - (9.0 * k * h * h - 8.0) * g1 + h * (9.0 * k * h * h - 4.0) * g2;
}

double s_map(double h, const ModelParams& params) {
  if (!(h < 0.0)) throw DomainError("s_map: h must be negative");
  return 2.25 * params.kappa * h * h;
}

double h_of_s(double s, const ModelParams& params) {
  if (!(s > 0.0)) throw DomainError("h_of_s: s must be positive");
  return -2.0 / 3.0 * std::sqrt(s / params.kappa);
}

double transformed_L2(double g, double gs, double gss, double s) {
  return s * (1.0 - s) * gss - 0.5 * gs - 5.0 / 36.0 * g;
}

double l2_factor(double h, const ModelParams& params) { return -36.0 * params.kappa * h; }

// --- complex continuation ----------------------------------------------------

CMat2 pfs2_matrix(std::complex<double> s, double kappa) {
  const std::complex<double> den = 6.0 * (s - 1.0) * (s - kappa);
  CMat2 A;
  A << (1.0 - s) / den, (kappa - 1.0) / den, (1.0 - s) / den, (s - 1.0) / den;
  return A;
}

PathSegment PathSegment::line(std::complex<double> a, std::complex<double> b, std::string name) {
  PathSegment p;
  p.kind = Kind::line;
  p.from = a;
  p.to = b;
  p.name = std::move(name);
  return p;
}

PathSegment PathSegment::arc(std::complex<double> c, double r, double t0, double t1, std::string name) {
  PathSegment p;
  p.kind = Kind::arc;
  p.center = c;
  p.radius = r;
  p.theta0 = t0;
  p.theta1 = t1;
  p.name = std::move(name);
  return p;
}

std::complex<double> PathSegment::at(double tau) const {
  if (kind == Kind::line) return from + tau * (to - from);
  return center + std::polar(radius, theta0 + tau * (theta1 - theta0));
}

std::complex<double> PathSegment::velocity(double tau) const {
  if (kind == Kind::line) return to - from;
  const double th = theta0 + tau * (theta1 - theta0);
  return std::complex<double>(0.0, 1.0) * std::polar(radius, th) * (theta1 - theta0);
}

namespace {

double distance_to_segment(const PathSegment& seg, std::complex<double> p) {
  if (seg.kind == PathSegment::Kind::line) {
    const std::complex<double> d = seg.to - seg.from;
    const double len2 = std::norm(d);
    double t = len2 > 0.0 ? std::real((p - seg.from) * std::conj(d)) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(seg.from + t * d - p);
  }
  double best = INFINITY;
  constexpr int kSamples = 4096;
  for (int q = 0; q <= kSamples; ++q) best = std::min(best, std::abs(seg.at(double(q) / kSamples) - p));
  return best;
}

using CState = std::array<std::complex<double>, 6>;

CState pack(const JState& j) { return {j.J(0), j.J(1), j.W(0, 0), j.W(1, 0), j.W(0, 1), j.W(1, 1)}; }

JState unpack(const CState& x, std::complex<double> s) {
  JState j;
  j.s = s;
  j.J << x[0], x[1];
  j.W << x[2], x[4], x[3], x[5];
  return j;
}

}  // namespace

JState propagate_J(const Path& path, const JState& J0, const ModelParams& params, double tol,
                   const ContinuationOptions& options, const JObserver& observer) {
  const double k = params.kappa;
  if (path.empty()) return J0;
  if (std::abs(path.front().start() - J0.s) > 1e-9 * std::max(1.0, std::abs(J0.s))) {
    throw DomainError("propagate_J: path does not start at the state's s");
  }
  for (const auto& seg : path) {
    for (double sing : {1.0, k}) {
      if (distance_to_segment(seg, sing) < options.eps_min) {
        throw ProximityError("propagate_J: segment '" + seg.name + "' passes within eps_min of s = " +
                             std::to_string(sing));
      }
    }
  }
  CState x = pack(J0);
  for (std::size_t q = 0; q < path.size(); ++q) {
    const PathSegment& seg = path[q];
    auto sys = [&](const CState& v, CState& dv, double tau) {
      const CMat2 A = pfs2_matrix(seg.at(tau), k) * seg.velocity(tau);
      for (int c = 0; c < 3; ++c) {
        dv[2 * c] = A(0, 0) * v[2 * c] + A(0, 1) * v[2 * c + 1];
        dv[2 * c + 1] = A(1, 0) * v[2 * c] + A(1, 1) * v[2 * c + 1];
      }
    };
    auto cap = [&](double tau) {
      const double rate = pfs2_matrix(seg.at(tau), k).norm() * std::abs(seg.velocity(tau));
      return std::min(options.max_dtau, rate > 0.0 ? 0.1 / rate : 1.0);
    };
    auto observe = [&](double tau, const CState& v) {
      const std::complex<double> s = seg.at(tau);
      if (std::abs(s - 1.0) < options.eps_min || std::abs(s - k) < options.eps_min) {
        throw ProximityError("propagate_J: continuation came within eps_min of a singular point");
      }
      if (observer) observer(q, tau, unpack(v, s));
    };
    detail::integrate_capped(sys, x, 0.0, 1.0, tol, cap, observe);
  }
  return unpack(x, path.back().end());
}

JState physical_J(double s, const ModelParams& params) {
  if (!(s > 1.0 && s < params.kappa)) throw DomainError("physical_J: s must lie in (1, kappa)");
  const PFVector pf = oracle_pf_vector(h_of_s(s, params), params);
  JState j;
  j.s = s;
  j.J << pf.derivs(0), pf.derivs(3);
  j.W << j.J(0), -j.J(1), j.J(1), j.J(0);
  return j;
}

}  // namespace q4
