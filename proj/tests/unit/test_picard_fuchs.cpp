#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "q4/errors.hpp"
#include "q4/picard_fuchs.hpp"
#include "q4/winding.hpp"

namespace q4 {
namespace {

using cd = std::complex<double>;

double max_rel(const Vec6& a, const Vec6& b) {
  return ((a - b).cwiseAbs().array() / b.cwiseAbs().array()).maxCoeff();
}

PFVector fd_vector(double h, const ModelParams& p) {
  PFVector pf = oracle_pf_vector(h, p);
  const double d = 1e-4 * std::abs(h);
  pf.derivs = (oracle_pf_vector(h + d, p).values - oracle_pf_vector(h - d, p).values) / (2.0 * d);
  return pf;
}

TEST(PFResiduals, FiniteDifferenceOracle) {
  const auto p = make_params(4.0);
  const PFVector pf = fd_vector(-0.5, p);
  EXPECT_LE(pf_residuals(pf, p).cwiseAbs().maxCoeff() / pf.values.cwiseAbs().maxCoeff(), 1e-4);
}

TEST(PFResiduals, SolveBased) {
  for (double k : {1.5, 4.0, 9.0}) {
    const auto p = make_params(k);
    const double h = 0.5 * (kCenterLevel + saddle_level(k));
    const PFVector pf = oracle_pf_vector(h, p);
    EXPECT_LE(pf_residuals(pf, p).cwiseAbs().maxCoeff() / pf.values.cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(PFResiduals, ScaleLinearly) {
  const auto p = make_params(4.0);
  PFVector pf = fd_vector(-0.5, p);
  const Vec6 r1 = pf_residuals(pf, p);
  pf.values *= 3.0;
  pf.derivs *= 3.0;
  EXPECT_LE((pf_residuals(pf, p) - 3.0 * r1).cwiseAbs().maxCoeff(), 1e-14 * pf.values.cwiseAbs().maxCoeff());
}

TEST(PFDerivatives, MatchFiniteDifferences) {
  const auto p = make_params(4.0);
  const PFVector pf = fd_vector(-0.45, p);
  EXPECT_LE(max_rel(pf_derivatives(-0.45, pf.values, p), pf.derivs), 1e-4);
}

TEST(PFDerivatives, LinearInValues) {
  const auto p = make_params(2.0);
  const Vec6 a = oracle_pf_vector(-0.55, p).values;
  const Vec6 b = Vec6::LinSpaced(1.0, 2.0);
  const Vec6 lhs = pf_derivatives(-0.55, 2.0 * a - b, p);
  const Vec6 rhs = 2.0 * pf_derivatives(-0.55, a, p) - pf_derivatives(-0.55, b, p);
  EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-10 * lhs.cwiseAbs().maxCoeff());
}

TEST(PFDerivatives, SingularNearCriticalLevel) {
  const auto p = make_params(4.0);
  const Vec6 v = Vec6::Ones();
  EXPECT_THROW(pf_derivatives(-2.0 / 3.0, v, p), SingularMatrixError);
}

TEST(Propagate, IdentityAndReversibility) {
  const auto p = make_params(4.0);
  const Vec6 v = oracle_pf_vector(-0.5, p).values;
  EXPECT_EQ(propagate(-0.5, v, -0.5, p), v);
  const Vec6 there = propagate(-0.5, v, -0.38, p);
  EXPECT_LE(max_rel(propagate(-0.38, there, -0.5, p), v), 1e-9);
}

TEST(Propagate, ReproducesOracle) {
  for (double k : {1.5, 4.0}) {
    const auto p = make_params(k);
    const double a = kCenterLevel, b = saddle_level(k);
    const double mid = 0.5 * (a + b);
    const Vec6 v = oracle_pf_vector(mid, p).values;
    for (double f : {0.1, 0.3, 0.7, 0.9}) {
      const double h = a + f * (b - a);
      EXPECT_LE(max_rel(propagate(mid, v, h, p), oracle_pf_vector(h, p).values), 1e-6) << "kappa=" << k;
    }
  }
}

TEST(Propagate, RefusesToCrossSingularLevel) {
  const auto p = make_params(4.0);
  const Vec6 v = oracle_pf_vector(-0.5, p).values;
  EXPECT_THROW(propagate(-0.5, v, -0.7, p), SingularityCrossingError);
}

TEST(DerivativeFormulas, EqualInputsKillSecondDerivative) {
  const auto p = make_params(4.0);
  EXPECT_NEAR(derivative_formulas(DerivOrder::second, -0.5, 1.3, 1.3, p)[1], 0.0, 1e-14);
}

TEST(DerivativeFormulas, MatchFiniteDifferences) {
  const auto p = make_params(4.0);
  const double h = -0.5, d = 1e-4;
  const auto D = [&](double x) { return pf_derivatives(x, oracle_pf_vector(x, p).values, p); };
  const Vec6 dp = D(h + d), dm = D(h - d), d0 = D(h);
  const auto second = derivative_formulas(DerivOrder::second, h, d0(0), d0(3), p);
  EXPECT_NEAR(second[0], (dp(0) - dm(0)) / (2 * d), 1e-6 * std::abs(second[0]));
  EXPECT_NEAR(second[1], (dp(3) - dm(3)) / (2 * d), 1e-6 * std::abs(second[1]));
  const auto sp = derivative_formulas(DerivOrder::second, h + d, dp(0), dp(3), p);
  const auto sm = derivative_formulas(DerivOrder::second, h - d, dm(0), dm(3), p);
  const auto third = derivative_formulas(DerivOrder::third, h, d0(0), d0(3), p);
  EXPECT_NEAR(third[0], (sp[0] - sm[0]) / (2 * d), 1e-4 * std::abs(third[0]));
  EXPECT_NEAR(third[1], (sp[1] - sm[1]) / (2 * d), 1e-4 * std::abs(third[1]));
}

TEST(DerivativeFormulas, PoleAtCriticalLevel) {
  EXPECT_THROW(derivative_formulas(DerivOrder::second, -2.0 / 3.0, 1.0, 2.0, make_params(4.0)), PoleError);
}

TEST(Systems, ClosureMinusSystemAndL2Identity) {
  for (double k : {1.5, 4.0}) {
    const auto p = make_params(k);
    const double h = 0.5 * (kCenterLevel + saddle_level(k));
    const PFSolve s = pf_derivatives_full(h, oracle_pf_vector(h, p).values, p);
    const auto r = pfs_residuals(h, s.d1(0), s.d1(3), s.d2(0), s.d2(3), p);
    EXPECT_LE(std::abs(r[0]) / std::abs(3.0 * k * h * s.d1(0)), 1e-8);
    EXPECT_LE(std::abs(r[1]) / std::abs(3.0 * k * h * s.d1(3)), 1e-8);
    const auto m = pf_minus_residuals(h, s.d1, s.d2, p);
    EXPECT_LE(std::abs(m[0]) / std::abs(s.d1(4)), 1e-6);
    EXPECT_LE(std::abs(m[1]) / std::abs(s.d1(5)), 1e-6);
    const auto l = l2j_identity(h, s, p);
    EXPECT_NEAR(l[0], l[1], 1e-6 * std::abs(l[1]));
  }
}

TEST(Operators, L1Examples) {
  EXPECT_DOUBLE_EQ(apply_L1(-0.5, 1.0, -0.5), 0.0);
  EXPECT_DOUBLE_EQ(apply_L1(2.5, 0.0, -0.4), -2.5);
}

TEST(Operators, L2Examples) {
  const double k = 4.0, h = -0.45;
  const auto p = make_params(k);
  EXPECT_NEAR(apply_L2(h, 1.0, 0.0, h, p), -4.0 * k * h * h + 8.0, 1e-14);
  EXPECT_NEAR(apply_L2(1.0, 0.0, 0.0, h, p), 5.0 * k * h, 1e-14);
}

TEST(Operators, SMap) {
  const auto p = make_params(4.0);
  EXPECT_NEAR(s_map(-2.0 / 3.0, p), 4.0, 1e-14);
  EXPECT_NEAR(s_map(saddle_level(4.0), p), 1.0, 1e-14);
  EXPECT_NEAR(h_of_s(2.25, p), -0.5, 1e-14);
}

TEST(Operators, TransformedL2IsMultipleOfL2) {
  const auto p = make_params(4.0);
  for (int q = 0; q < 10; ++q) {
    const double h = -0.64 + 0.028 * q;
    const auto g = [&](double x) { return std::exp(0.7 * x) + x * x * x; };
    const double g1 = 0.7 * std::exp(0.7 * h) + 3 * h * h, g2 = 0.49 * std::exp(0.7 * h) + 6 * h;
    const double s = s_map(h, p);
    const double ds = 9.0 * p.kappa * h / 2.0;
    const double gs = g1 / ds;
    const double gss = (g2 - gs * 9.0 * p.kappa / 2.0) / (ds * ds);
    EXPECT_NEAR(apply_L2(g(h), g1, g2, h, p), l2_factor(h, p) * transformed_L2(g(h), gs, gss, s),
                1e-12 * std::max(1.0, std::abs(apply_L2(g(h), g1, g2, h, p))));
  }
}

double det_rel_drift(const Path& path, const ModelParams& p, double s0) {
  const JState j0 = physical_J(s0, p);
  const cd d0 = j0.W.determinant();
  double worst = 0.0;
  propagate_J(path, j0, p, 1e-12, {}, [&](std::size_t, double, const JState& st) {
    worst = std::max(worst, std::abs(st.W.determinant() - d0) / std::abs(d0));
  });
  return worst;
}

TEST(Continuation, WronskianConstantOnRealInterval) {
  const double k = 4.0;
  const auto p = make_params(k);
  const double s0 = 2.5;
  Path path{PathSegment::line(s0, 1.0 + 1e-3), PathSegment::line(1.0 + 1e-3, k - 1e-3)};
  EXPECT_LE(det_rel_drift(path, p, s0), 1e-8);
}

TEST(Continuation, WronskianConstantOnRectangle) {
  const double k = 4.0;
  const auto p = make_params(k);
  const double s0 = 2.5;
  const cd a(s0, 0.0), b(s0, 3.0), c(1.5, 3.0), d(1.5, -2.0), e(s0, -2.0);
  Path path{PathSegment::line(a, b), PathSegment::line(b, c), PathSegment::line(c, d),
            PathSegment::line(d, e), PathSegment::line(e, a)};
  EXPECT_LE(det_rel_drift(path, p, s0), 1e-8);
}

TEST(Continuation, ContractibleLoopReturns) {
  const auto p = make_params(4.0);
  const double s0 = 2.5;
  const JState j0 = physical_J(s0, p);
  Path loop{PathSegment::line(s0, cd(s0, 0.4)), PathSegment::arc(cd(2.0, 0.4), 0.5, 0.0, 2.0 * std::numbers::pi),
            PathSegment::line(cd(s0, 0.4), s0)};
  const JState j1 = propagate_J(loop, j0, p);
  EXPECT_LE((j1.J - j0.J).norm() / j0.J.norm(), 1e-8);
  EXPECT_LE((j1.W - j0.W).norm() / j0.W.norm(), 1e-8);
}

TEST(Continuation, LoopAroundKappaHasMonodromy) {
  const auto p = make_params(4.0);
  const double s0 = 2.5;
  const JState j0 = physical_J(s0, p);
  Path loop{PathSegment::line(s0, 3.5), PathSegment::arc(4.0, 0.5, std::numbers::pi, 3.0 * std::numbers::pi),
            PathSegment::line(3.5, s0)};
  const JState j1 = propagate_J(loop, j0, p);
  EXPECT_GT((j1.W - j0.W).norm() / j0.W.norm(), 1e-3);
}

TEST(Continuation, ProximityGuard) {
  const auto p = make_params(4.0);
  EXPECT_THROW(propagate_J({PathSegment::line(2.5, 1.0 + 1e-6)}, physical_J(2.5, p), p), ProximityError);
}

TEST(Continuation, GrowthExponentsAtInfinity) {
  for (double k : {1.5, 4.0, 9.0}) {
    const auto p = make_params(k);
    for (double th : {std::numbers::pi / 4.0, std::numbers::pi / 2.0, 3.0 * std::numbers::pi / 4.0}) {
      const ExponentFit f = fit_infinity_exponents(p, th);
      EXPECT_NEAR(f.slope_max, 1.0 / 6.0, 1e-3) << "kappa=" << k << " theta=" << th;
      EXPECT_NEAR(f.slope_min, -1.0 / 6.0, 1e-3) << "kappa=" << k << " theta=" << th;
    }
  }
}

TEST(PFTable, MatchesOracle) {
  const auto p = make_params(2.0);
  const double a = kCenterLevel + 1e-3, b = saddle_level(2.0) - 1e-3;
  std::vector<double> nodes;
  for (int q = 0; q <= 10; ++q) nodes.push_back(a + (b - a) * q / 10.0);
  const PFTable t(p, nodes);
  EXPECT_LE(max_rel(t.values_at(0.5 * (nodes[3] + nodes[4])), oracle_pf_vector(0.5 * (nodes[3] + nodes[4]), p).values),
            1e-8);
}

}  // namespace
}  // namespace q4
