#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "q4/errors.hpp"
#include "q4/quadrature.hpp"

namespace q4 {
namespace {

const std::array<MomentIndex, 6> kBasic{MomentIndex{0, 0}, MomentIndex{1, 0}, MomentIndex{0, 1},
                                        MomentIndex{1, 1}, MomentIndex{-1, 0}, MomentIndex{-1, 1}};

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

TEST(Moment, AreaVanishesLinearlyAtCenter) {
  const auto p = make_params(4.0);
  const double a1 = moment({0, 0}, -2.0 / 3.0 + 1e-4, p).value;
  const double a2 = moment({0, 0}, -2.0 / 3.0 + 2e-4, p).value;
  EXPECT_GT(a1, 0.0);
  EXPECT_NEAR(a2 / a1, 2.0, 1e-3);
}

TEST(Moment, MethodsAgreeAtMinusHalf) {
  const auto p = make_params(4.0);
  const double g = moment({0, 0}, -0.5, p, Method::green, 1e-10).value;
  const double a = moment({0, 0}, -0.5, p, Method::area2d, 1e-10).value;
  EXPECT_LE(rel(g, a), 1e-6);
}

TEST(Moment, AreaMatchesPolygon) {
  const auto p = make_params(2.0);
  const double g = moment({0, 0}, -0.5, p, Method::green, 1e-12).value;
  const Oval o = oval(-0.5, p, 1e-12, 4096);
  EXPECT_NEAR(polygon_area(o), g, 1e-5 * g);
}

TEST(Moment, OracleAgreementAcrossKappa) {
  for (double k : {1.5, 2.0, 4.0, 9.0}) {
    const auto p = make_params(k);
    const double hs = saddle_level(k);
    for (double f : {0.05, 0.5, 0.95}) {
      const double h = kCenterLevel + f * (hs - kCenterLevel);
      const auto g = moments(kBasic, h, p, Method::green, 1e-10);
      const auto a = moments(kBasic, h, p, Method::area2d, 1e-10);
      for (std::size_t q = 0; q < kBasic.size(); ++q) {
        EXPECT_LE(rel(g[q].value, a[q].value), 1e-6) << "kappa=" << k << " h=" << h << " q=" << q;
      }
    }
  }
}

TEST(Moment, TighterToleranceDoesNotWorsenAgreement) {
  const auto p = make_params(4.0);
  const double d1 = rel(moment({1, 1}, -0.45, p, Method::green, 1e-6).value,
                        moment({1, 1}, -0.45, p, Method::area2d, 1e-6).value);
  const double d2 = rel(moment({1, 1}, -0.45, p, Method::green, 1e-12).value,
                        moment({1, 1}, -0.45, p, Method::area2d, 1e-12).value);
  EXPECT_LE(d2, std::max(d1, 1e-13));
}

TEST(Moment, CubicFormIdentityMinusSix) {
  const auto p = make_params(4.0);
  const double hs = saddle_level(4.0);
  for (double f : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double h = kCenterLevel + f * (hs - kCenterLevel);
    const double a = moment({-6, 2, MomentForm::cubic_form}, h, p, Method::green, 1e-12).value;
    const double b = moment({-6, 1, MomentForm::cubic_form}, h, p, Method::green, 1e-12).value;
    EXPECT_LE(rel(a, b), 1e-6);
  }
}

TEST(Moment, ReflectedAnnulusSymmetry) {
  const auto p = make_params(2.0);
  const double h = -0.55;
  const auto dual = CubicLevel::symmetric_dual(h, 2.0);
  for (const auto& idx : kBasic) {
    if (idx.i < 0) continue;
    const double a = moment(idx, h, p, Method::green, 1e-12).value;
    const double d = moments_over(dual, std::span<const MomentIndex>(&idx, 1), -h, Method::green, 1e-12)[0].value;
    const double sign = (idx.i + idx.j) % 2 == 0 ? 1.0 : -1.0;
    EXPECT_LE(rel(d, sign * a), 1e-10);
  }
}

TEST(Moment, RejectsNonInteriorLevels) {
  const auto p = make_params(4.0);
  EXPECT_THROW(moment({0, 0}, -2.0 / 3.0, p), DegenerateLevelError);
  EXPECT_THROW(moment({0, 0}, -1.0 / 3.0, p), DegenerateLevelError);
  EXPECT_THROW(moment({0, 0}, -0.1, p), DomainError);
  EXPECT_THROW(moment({-1, -1}, -0.5, p), DomainError);
}

TEST(Residue, SaddleLevelValue) {
  EXPECT_NEAR(residue_value(-1.0 / 3.0, -1.0, make_params(4.0)), 4.0 / 3.0, 1e-14);
}

TEST(Residue, VanishesAtDerivedLevel) {
  for (double k : {2.0, 4.0, 9.0}) {
    const double y = -std::sqrt(5.0 / k);
    const double h = -2.0 * std::sqrt(5.0) / (3.0 * std::sqrt(k));
    EXPECT_NEAR(residue_value(h, y, make_params(k)), 0.0, 1e-13);
  }
}

TEST(Residue, PoleAndDomain) {
  const auto p = make_params(4.0);
  EXPECT_THROW(residue_value(-1.0 / 3.0, 0.5, p), PoleError);
  EXPECT_THROW(residue_value(-0.5, 0.0, p), DomainError);
}

TEST(Discriminant, CriticalLevels) {
  const auto p = make_params(4.0);
  EXPECT_NE(curve_discriminant(-0.5, p), 0.0);
  EXPECT_EQ(curve_discriminant(-2.0 / 3.0, p), 0.0);
  EXPECT_NEAR(curve_discriminant(saddle_level(4.0), p), 0.0, 1e-15);
}

}  // namespace
}  // namespace q4
