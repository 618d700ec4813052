#include "q4/winding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "q4/errors.hpp"

namespace q4 {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

cd horner(const std::vector<double>& c, cd s) {
  cd acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * s + *it;
  return acc;
}

PathSegment sub_segment(const PathSegment& seg, double ta, double tb) {
  if (seg.kind == PathSegment::Kind::line) return PathSegment::line(seg.at(ta), seg.at(tb), seg.name);
  const double d = seg.theta1 - seg.theta0;
  return PathSegment::arc(seg.center, seg.radius, seg.theta0 + ta * d, seg.theta0 + tb * d, seg.name);
}

JState advance(const PathSegment& seg, const JState& from, double ta, double tb, const ModelParams& params,
               const ContourOptions& opt) {
  if (ta == tb) return from;
  ContinuationOptions co;
  co.eps_min = opt.eps_min;
  JState start = from;
  start.s = seg.at(ta);
  return propagate_J({sub_segment(seg, ta, tb)}, start, params, opt.tol, co);
}

}  // namespace

PolyPair::PolyPair(std::vector<double> p, std::vector<double> q, int n) : P(std::move(p)), Q(std::move(q)), n_(n) {
  if (n < 0) throw DomainError("PolyPair: n must be non-negative");
  if (static_cast<int>(P.size()) > n + 1) throw DomainError("PolyPair: deg P exceeds n");
  if (static_cast<int>(Q.size()) > n) throw DomainError("PolyPair: deg Q exceeds n - 1");
}

cd PolyPair::eval_P(cd s) const { return horner(P, s); }
cd PolyPair::eval_Q(cd s) const { return horner(Q, s); }

std::string_view to_string(ContourPiece p) {
  switch (p) {
    case ContourPiece::small_circle: return "small_circle";
    case ContourPiece::big_circle: return "big_circle";
    case ContourPiece::cut_upper: return "cut_upper";
    case ContourPiece::cut_lower: return "cut_lower";
  }
  return "?";
}

ContourTrace::ContourTrace(const ModelParams& params, const ContourOptions& options)
    : params_(params), options_(options) {
  const double k = params.kappa, eps = options.epsilon, R = options.radius;
  if (!(eps > options.eps_min) || !(1.0 + eps < k) || !(R > k + 1.0)) {
    throw DomainError("ContourTrace: need eps_min < eps, 1 + eps < kappa < R - 1");
  }
  const double s0 = 0.5 * (1.0 + k);
  ContinuationOptions co;
  co.eps_min = options.eps_min;
  JState state = propagate_J({PathSegment::line(s0, 1.0 + eps, "lead")}, physical_J(s0, params), params,
                             options.tol, co);

  segments_ = {
      {PathSegment::arc(1.0, eps, 0.0, -kPi, "small_circle"), ContourPiece::small_circle, {}},
      {PathSegment::line(1.0 - eps, -R, "cut_lower"), ContourPiece::cut_lower, {}},
      {PathSegment::arc(0.0, R, -kPi, kPi, "big_circle"), ContourPiece::big_circle, {}},
      {PathSegment::line(-R, 1.0 - eps, "cut_upper"), ContourPiece::cut_upper, {}},
      {PathSegment::arc(1.0, eps, kPi, 0.0, "small_circle"), ContourPiece::small_circle, {}},
  };
  co.max_dtau = 1.0 / options.samples_per_segment;
  for (auto& seg : segments_) {
    state.s = seg.path.start();
    state = propagate_J({seg.path}, state, params, options.tol, co,
                        [&seg](std::size_t, double tau, const JState& st) { seg.samples.push_back({tau, st}); });
  }
}

JState ContourTrace::state_at(std::size_t q, std::size_t sample, double tau) const {
  const Segment& seg = segments_.at(q);
  const Sample& from = seg.samples.at(sample);
  return advance(seg.path, from.state, from.tau, tau, params_, options_);
}

WindingReport winding_count(const PolyPair& pair, const ContourTrace& trace) {
  const ModelParams& params = trace.params();
  const ContourOptions& opt = trace.options();
  const auto F = [&](const JState& st) {
    const cd J1 = st.J(0), J2 = st.J(1);
    if (std::abs(J1) <= 1e-13 * std::abs(J2) || std::abs(J1) == 0.0) {
      throw ConsistencyError("winding_count: J1 vanishes on the contour");
    }
    const cd F = pair.eval_P(st.s) + pair.eval_Q(st.s) * J2 / J1;
    if (F == 0.0) throw ConsistencyError("winding_count: F vanishes on the contour");
    return F;
  };

  WindingReport rep;
  rep.n = pair.n();
  rep.epsilon = opt.epsilon;
  double sum = 0.0;

  for (std::size_t q = 0; q < trace.segments().size(); ++q) {
    const auto& seg = trace.segments()[q];
    // Argument increment over [ta, tb], halving while a step turns by more than pi/4.
    const auto increment = [&](auto&& self, const JState& sa, double ta, cd Fa, double tb, cd Fb,
                               int depth) -> double {
      const double d = std::arg(Fb / Fa);
      if (std::abs(d) <= kPi / 4.0) return d;
      if (depth > 40) throw ConsistencyError("winding_count: argument refinement did not settle");
      const double tm = 0.5 * (ta + tb);
      const JState sm = advance(seg.path, sa, ta, tm, params, opt);
      const cd Fm = F(sm);
      return self(self, sa, ta, Fa, tm, Fm, depth + 1) + self(self, sm, tm, Fm, tb, Fb, depth + 1);
    };
    double acc = 0.0;
    cd Fprev = F(seg.samples.front().state);
    for (std::size_t k = 1; k < seg.samples.size(); ++k) {
      const cd Fk = F(seg.samples[k].state);
      acc += increment(increment, seg.samples[k - 1].state, seg.samples[k - 1].tau, Fprev, seg.samples[k].tau, Fk, 0);
      Fprev = Fk;
    }
    rep.segments.push_back({seg.piece, acc});
    sum += acc;

    if (seg.piece == ContourPiece::cut_upper || seg.piece == ContourPiece::cut_lower) {
      const auto& first = seg.samples.front().state;
      const double w = std::imag(first.J(1) * std::conj(first.J(0)));
      for (const auto& smp : seg.samples) {
        const JState& st = smp.state;
        const double a1 = std::norm(st.J(0));
        const double q_val = std::real(pair.eval_Q(st.s));
        const double direct = std::imag(F(st));
        const double predicted = q_val * w / a1;
        const double scale = std::abs(direct) + std::abs(predicted) + std::abs(F(st)) * 1e-12 + 1e-300;
        rep.cut_identity_mismatch = std::max(rep.cut_identity_mismatch, std::abs(direct - predicted) / scale);
      }
    }
  }
  rep.total = sum / (2.0 * kPi);
  rep.winding = static_cast<int>(std::lround(rep.total));
  rep.integrality_residual = std::abs(rep.total - rep.winding);
  if (rep.integrality_residual > 0.2) {
    throw ConsistencyError("winding_count: total argument change is not close to a multiple of 2 pi");
  }
  rep.exceeds_bound = rep.winding > 2 * rep.n;
  return rep;
}

WindingReport winding_count(const PolyPair& pair, const ModelParams& params, double epsilon) {
  ContourOptions opt;
  opt.epsilon = epsilon;
  return winding_count(pair, ContourTrace(params, opt));
}

ExponentFit fit_infinity_exponents(const ModelParams& params, double theta, double r_lo, double r_hi) {
  const double k = params.kappa;
  const double s0 = 0.5 * (1.0 + k);
  const double r_start = 10.0 * k;
  const cd dir = std::polar(1.0, theta);
  const cd lift(s0, k);
  Path path{PathSegment::line(s0, lift, "lift"), PathSegment::line(lift, r_start * dir, "approach"),
            PathSegment::line(r_start * dir, r_lo * dir, "ray")};
  JState st = propagate_J(path, physical_J(s0, params), params, 1e-13);
  const auto svd_log = [](const JState& j) {
    Eigen::JacobiSVD<CMat2> svd(j.W);
    return std::pair{std::log(svd.singularValues()(0)), std::log(svd.singularValues()(1))};
  };
  const auto lo = svd_log(st);
  st = propagate_J({PathSegment::line(r_lo * dir, r_hi * dir, "ray")}, st, params, 1e-13);
  const auto hi = svd_log(st);
  const double span = std::log(r_hi / r_lo);
  return {theta, (hi.first - lo.first) / span, (hi.second - lo.second) / span};
}

}  // namespace q4
