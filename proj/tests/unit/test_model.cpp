#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "q4/errors.hpp"
#include "q4/model.hpp"
#include "q4/quadrature.hpp"

namespace q4 {
namespace {

TEST(Params, KappaFourGivesRotatedAlpha) {
  const auto p = make_params(4.0, {1, 0, 0, 0});
  EXPECT_DOUBLE_EQ(p.b, -1.0);
  EXPECT_DOUBLE_EQ(p.c, std::sqrt(3.0));
  EXPECT_DOUBLE_EQ(p.alpha.real(), -1.0);
  EXPECT_DOUBLE_EQ(p.alpha.imag(), std::sqrt(3.0));
}

TEST(Params, KappaTwoGivesImaginaryAlpha) {
  const auto p = make_params(2.0);
  EXPECT_DOUBLE_EQ(p.b, 0.0);
  EXPECT_DOUBLE_EQ(p.c, 2.0);
  EXPECT_EQ(p.alpha, std::complex<double>(0.0, 2.0));
}

TEST(Params, RejectsKappaAtMostOne) {
  EXPECT_THROW(make_params(1.0), DomainError);
  EXPECT_THROW(make_params(0.5), DomainError);
  EXPECT_THROW(make_params(std::nan("")), DomainError);
}

TEST(Hamiltonian, OriginalAtOrigin) {
  const auto p = make_params(4.0);
  EXPECT_DOUBLE_EQ(hamiltonian(Form::original_rational, {0, 0}, p), 4.0 / 9.0);
}

TEST(Hamiltonian, CubicAtCenter) {
  for (double k : {1.5, 4.0, 9.0}) {
    const auto p = make_params(k);
    for (double h : {-0.6, -0.5, 0.3}) {
      EXPECT_NEAR(hamiltonian(Form::cubic_form, {1, 1}, p, h), -h - 2.0 / 3.0, 1e-14);
    }
  }
  EXPECT_THROW(hamiltonian(Form::cubic_form, {1, 1}, make_params(2.0)), DomainError);
}

TEST(Hamiltonian, SymmetricFormIsOdd) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3, 3);
  for (double k : {1.1, 2.0, 9.0}) {
    const auto p = make_params(k);
    for (int n = 0; n < 50; ++n) {
      const Point q{u(rng), u(rng)};
      const double a = hamiltonian(Form::symmetric_form, q, p);
      const double b = hamiltonian(Form::symmetric_form, {-q.x, -q.y}, p);
      EXPECT_NEAR(a, -b, 1e-13 * std::max(1.0, std::abs(a)));
    }
  }
}

TEST(CoordinateMap, Origin) {
  const auto p = make_params(4.0);
  const Point XY = coordinate_map({0, 0}, p);
  EXPECT_DOUBLE_EQ(XY.x, 1.0);
  EXPECT_DOUBLE_EQ(XY.y, 0.0);
  EXPECT_NEAR(64.0 * 9.0 * std::pow(hamiltonian(Form::xy_form, XY, p), 2), 4.0 / 9.0, 1e-15);
}

TEST(CoordinateMap, RejectsNegativePsi) {
  const auto p = make_params(4.0);
  EXPECT_THROW(coordinate_map({0.0, 1.0}, p), DomainError);
}

TEST(CoordinateMap, FirstIntegralCorrespondence) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2, 2);
  for (double k : {1.5, 2.0, 4.0, 9.0}) {
    const auto p = make_params(k);
    int accepted = 0;
    while (accepted < 100) {
      const Point q{u(rng), u(rng)};
      if (!(psi(q, p) > 0.0 && phi(q, p) < 0.0)) continue;
      ++accepted;
      const double lhs = hamiltonian(Form::original_rational, q, p);
      const double H = hamiltonian(Form::xy_form, coordinate_map(q, p), p);
      const double rhs = 64.0 * (2.0 - p.b) * (2.0 - p.b) * H * H;
      EXPECT_NEAR(lhs, rhs, 1e-10 * std::abs(rhs));
    }
  }
}

TEST(CriticalLevels, KappaFour) {
  const auto c = critical_levels(make_params(4.0));
  EXPECT_DOUBLE_EQ(c.center_h, -2.0 / 3.0);
  EXPECT_DOUBLE_EQ(c.saddle_h, -1.0 / 3.0);
  EXPECT_DOUBLE_EQ(c.saddle_point.x, 0.0);
  EXPECT_DOUBLE_EQ(c.saddle_point.y, 0.5);
}

TEST(CriticalLevels, CenterValueExact) {
  for (double k : {1.1, 1.5, 2.0, 4.0, 9.0}) {
    const auto p = make_params(k);
    EXPECT_NEAR(hamiltonian(Form::symmetric_form, {1, 1}, p), -2.0 / 3.0, 1e-15);
    const auto c = critical_levels(p);
    EXPECT_NEAR(hamiltonian(Form::symmetric_form, c.saddle_point, p), c.saddle_h, 1e-15);
  }
}

TEST(LevelClassify, Windows) {
  const auto p = make_params(4.0);
  auto lp = level_classify(-2.0 / 3.0, p);
  EXPECT_EQ(lp.window, Window::center_end);
  EXPECT_NEAR(lp.s, 4.0, 1e-14);
  lp = level_classify(-1.0 / 3.0, p);
  EXPECT_EQ(lp.window, Window::saddle_end);
  EXPECT_NEAR(lp.s, 1.0, 1e-14);
  lp = level_classify(-0.5, p);
  EXPECT_EQ(lp.window, Window::interior);
  EXPECT_NEAR(lp.s, 2.25, 1e-14);
  EXPECT_EQ(level_classify(-0.9, p).window, Window::extended);
  EXPECT_EQ(level_classify(0.1, p).window, Window::outside);
}

TEST(Oval, NearCenterIsTiny) {
  const auto p = make_params(4.0);
  const Oval o = oval(-2.0 / 3.0 + 1e-8, p, 1e-10);
  double dmax = 0.0;
  for (const auto& q : o.points) dmax = std::max(dmax, std::hypot(q.x - 1.0, q.y - 1.0));
  EXPECT_LT(dmax, 1e-3);
  EXPECT_GT(dmax, 1e-5);
}

TEST(Oval, VerticesOnLevel) {
  const auto p = make_params(4.0);
  const Oval o = oval(-0.5, p, 1e-10);
  ASSERT_GE(o.points.size(), 64u);
  for (const auto& q : o.points) {
    EXPECT_NEAR(hamiltonian(Form::symmetric_form, q, p), -0.5, 1e-10);
  }
  EXPECT_LT(o.closure_gap, 1e-12);
  EXPECT_GT(polygon_area(o), 0.0);
}

TEST(Oval, DualIsPointReflection) {
  const auto p = make_params(2.0);
  const Oval a = oval(-0.55, p, 1e-10);
  const Oval d = dual_oval(-0.55, p, 1e-10);
  const auto level = CubicLevel::symmetric(-0.55, 2.0);
  ASSERT_FALSE(d.points.empty());
  for (std::size_t k = 0; k < d.points.size(); ++k) {
    const Point q = ray_point(level, d.angles[k] - std::numbers::pi).p;
    EXPECT_NEAR(d.points[k].x, -q.x, 1e-12);
    EXPECT_NEAR(d.points[k].y, -q.y, 1e-12);
  }
  EXPECT_NEAR(polygon_area(a), polygon_area(d), 1e-6 * polygon_area(a));
}

TEST(Oval, RejectsEndpoints) {
  const auto p = make_params(4.0);
  EXPECT_THROW(oval(-2.0 / 3.0, p, 1e-8), DegenerateLevelError);
  EXPECT_THROW(oval(-1.0 / 3.0, p, 1e-8), DegenerateLevelError);
  EXPECT_THROW(oval(0.0, p, 1e-8), DomainError);
}

TEST(RealRootsY, SaddleLevelHasDoubleRoot) {
  const auto r = real_roots_y(-1.0 / 3.0, make_params(4.0));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(r[0].value, -1.0, 1e-12);
  EXPECT_NEAR(r[1].value, 0.5, 1e-7);
  EXPECT_EQ(r[1].multiplicity, 2);
}

TEST(RealRootsY, ZeroLevel) {
  const auto r = real_roots_y(0.0, make_params(4.0));
  ASSERT_EQ(r.size(), 3u);
  EXPECT_NEAR(r[0].value, -std::sqrt(0.75), 1e-14);
  EXPECT_NEAR(r[1].value, 0.0, 1e-14);
  EXPECT_NEAR(r[2].value, std::sqrt(0.75), 1e-14);
}

TEST(RealRootsY, SingleRootBelowCenter) {
  const double h = -2.0 * std::sqrt(5.0) / 6.0;
  const auto r = real_roots_y(h, make_params(4.0));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_NEAR(r[0].value, -std::sqrt(5.0) / 2.0, 1e-14);
}

TEST(RealRootsY, ResidualBound) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5, 5);
  for (double k : {1.5, 4.0, 9.0}) {
    const auto p = make_params(k);
    for (int n = 0; n < 200; ++n) {
      const double h = u(rng);
      for (const auto& r : real_roots_y(h, p)) {
        if (r.multiplicity > 1) continue;
        const double y = r.value;
        EXPECT_LE(std::abs(k / 3.0 * y * y * y - y - h), 1e-12 * std::max(1.0, std::abs(h)));
      }
    }
  }
}

}  // namespace
}  // namespace q4
