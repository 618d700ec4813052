#include <gtest/gtest.h>

#include <cmath>

#include "q4/errors.hpp"
#include "q4/reduction.hpp"

namespace q4 {
namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

std::vector<double> levels(double k) {
  std::vector<double> out;
  for (double f : {0.1, 0.3, 0.5, 0.7, 0.9}) out.push_back(kCenterLevel + f * (saddle_level(k) - kCenterLevel));
  return out;
}

TEST(Recurrence, SampleResiduals) {
  EXPECT_LE(recurrence_residual(RecurrenceKind::dx, 0, 0, -0.5, make_params(4.0)).relative(), 1e-6);
  EXPECT_LE(recurrence_residual(RecurrenceKind::dy, 0, 0, -0.5, make_params(2.0)).relative(), 1e-6);
}

TEST(Recurrence, CombinedMinusSixGivesIdentity) {
  const auto p = make_params(4.0);
  for (double h : levels(4.0)) {
    EXPECT_LE(recurrence_residual(RecurrenceKind::combined, -6, 1, h, p).relative(), 1e-6);
  }
}

TEST(Recurrence, AdmissibleGrid) {
  for (double k : {1.5, 2.0, 4.0, 9.0}) {
    const auto p = make_params(k);
    for (double h : levels(k)) {
      for (int i = -6; i <= 3; ++i) {
        for (int j = 0; j <= 3; ++j) {
          EXPECT_LE(recurrence_residual(RecurrenceKind::dx, i, j, h, p).relative(), 1e-6);
          EXPECT_LE(recurrence_residual(RecurrenceKind::dy, i, j, h, p).relative(), 1e-6);
        }
      }
    }
  }
}

TEST(Reduce, OneTwoShape) {
  const auto p = make_params(4.0);
  const auto c = moment_reduce({1, 2}, p);
  const double h = -0.5;
  double w00 = 0, w10 = 0, w01 = 0;
  for (std::size_t t = 0; t < c.terms.size(); ++t) {
    const auto& idx = c.terms[t].index;
    if (idx.i == 0 && idx.j == 0) w00 += c.weight_at(t, h);
    if (idx.i == 1 && idx.j == 0) w10 += c.weight_at(t, h);
    if (idx.i == 0 && idx.j == 1) w01 += c.weight_at(t, h);
  }
  EXPECT_NEAR(w00, 0.3 * h, 1e-15);
  EXPECT_NEAR(w10, 1.0, 1e-15);
  EXPECT_NEAR(w01, 0.2, 1e-15);
}

TEST(Reduce, ThreeZeroShape) {
  const double k = 4.0;
  const auto c = moment_reduce({3, 0}, make_params(k));
  const double h = -0.45;
  double w00 = 0, w10 = 0, w01 = 0;
  for (std::size_t t = 0; t < c.terms.size(); ++t) {
    const auto& idx = c.terms[t].index;
    if (idx.i == 0 && idx.j == 0) w00 += c.weight_at(t, h);
    if (idx.i == 1 && idx.j == 0) w10 += c.weight_at(t, h);
    if (idx.i == 0 && idx.j == 1) w01 += c.weight_at(t, h);
  }
  EXPECT_NEAR(w00, 3.0 * k * h / (10.0 * (k - 1.0)), 1e-14);
  EXPECT_NEAR(w10, 1.0, 1e-14);
  EXPECT_NEAR(w01, k / (5.0 * (k - 1.0)), 1e-14);
}

TEST(Reduce, OracleChecks) {
  for (double k : {1.5, 4.0}) {
    const auto p = make_params(k);
    for (const MomentIndex idx : {MomentIndex{1, 2}, MomentIndex{2, 1}, MomentIndex{3, 0}, MomentIndex{0, 3},
                                  MomentIndex{-1, 4}}) {
      const auto c = moment_reduce(idx, p);
      for (double h : levels(k)) {
        EXPECT_LE(rel(c.evaluate(h, p), moment(idx, h, p, Method::green, 1e-12).value), 1e-6)
            << idx.i << "," << idx.j << " kappa=" << k;
      }
    }
  }
}

TEST(Reduce, RejectsOtherIndices) { EXPECT_THROW(moment_reduce({2, 2}, make_params(4.0)), DomainError); }

TEST(Inversion, Examples) {
  const auto p = make_params(4.0);
  EXPECT_LE(inversion_check(-3, 0, -0.5, p).relative(), 1e-6);
  EXPECT_LE(inversion_check(-6, 1, -0.5, p).relative(), 1e-6);
  const double cubic = moment({-3, 0, MomentForm::cubic_form}, -0.5, p, Method::green, 1e-12).value;
  const double sym = moment({0, 0}, -0.5, p, Method::green, 1e-12).value;
  EXPECT_GT(cubic, 0.0);
  EXPECT_NEAR(cubic, sym, 1e-10 * sym);
}

TEST(Assemble, VanishesAtCenter) {
  const auto p = make_params(4.0, {1, 1, 1, 1});
  const double near1 = assemble_I(-2.0 / 3.0 + 1e-4, p, Route::basic, Method::green, 1e-10);
  const double near2 = assemble_I(-2.0 / 3.0 + 2e-4, p, Route::basic, Method::green, 1e-10);
  const double mid = assemble_I(-0.5, p, Route::basic);
  EXPECT_LT(std::abs(near1), 1e-2 * std::abs(mid));
  EXPECT_NEAR(near2 / near1, 2.0, 1e-2);
}

TEST(Assemble, RouteExamples) {
  const auto p = make_params(4.0, {1, 1, 1, 1});
  EXPECT_LE(rel(assemble_I(-0.5, p, Route::cubic), assemble_I(-0.5, p, Route::symmetric)), 1e-6);
  const auto q = make_params(2.0, {0, 0, 0, 1});
  EXPECT_LE(rel(assemble_I(-0.5, q, Route::symmetric), assemble_I(-0.5, q, Route::basic)), 1e-6);
  EXPECT_THROW(assemble_I(-0.45, q, Route::basic), DomainError);
}

TEST(Assemble, RouteEquivalenceGrid) {
  int points = 0;
  for (double k : {1.5, 2.0, 4.0, 9.0}) {
    for (const MuVector mu : {MuVector{1, 0, 0, 0}, MuVector{0, 1, 0, 0}, MuVector{0, 0, 1, 0},
                              MuVector{0, 0, 0, 1}, MuVector{0.3, -0.7, 0.2, 0.6}}) {
      const auto p = make_params(k, mu);
      for (double h : levels(k)) {
        const double ref = assemble_I(h, p, Route::basic);
        for (Route r : {Route::cubic_shifted, Route::cubic, Route::symmetric}) {
          EXPECT_LE(rel(assemble_I(h, p, r), ref), 1e-6);
        }
        ++points;
      }
    }
  }
  EXPECT_GE(points, 100);
}

TEST(Assemble, LinearInMu) {
  const double h = -0.5;
  const MuVector a{0.2, -0.4, 0.7, 0.1}, b{-0.5, 0.3, 0.1, 0.9};
  MuVector sum{};
  for (int i = 0; i < 4; ++i) sum[i] = 2.0 * a[i] - 3.0 * b[i];
  const double lhs = assemble_I(h, make_params(4.0, sum), Route::basic);
  const double rhs = 2.0 * assemble_I(h, make_params(4.0, a), Route::basic) -
                     3.0 * assemble_I(h, make_params(4.0, b), Route::basic);
  EXPECT_NEAR(lhs, rhs, 1e-13 * std::max(1.0, std::abs(lhs)));
}

}  // namespace
}  // namespace q4
