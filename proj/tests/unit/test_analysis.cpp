#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "q4/analysis.hpp"
#include "q4/errors.hpp"
#include "q4/melnikov.hpp"
#include "q4/reduction.hpp"

namespace q4 {
namespace {

TEST(Residue, SaddleLevelRootAndValue) {
  const auto r = residue_solution(-1.0 / 3.0, make_params(4.0));
  EXPECT_NEAR(r.y0, -1.0, 1e-12);
  EXPECT_NEAR(r.f, 4.0 / 3.0, 1e-12);
}

TEST(Residue, ZeroLevelForKappaFour) {
  const double hs = residue_zero_level(4.0);
  EXPECT_NEAR(hs, -std::sqrt(5.0) / 3.0, 1e-15);
  EXPECT_LT(hs, kCenterLevel);
  EXPECT_NEAR(residue_solution(hs, make_params(4.0)).f, 0.0, 1e-13);
}

TEST(ChebyshevProbe, KappaFour) {
  const auto p = make_params(4.0);
  const ChebyshevReport c = chebyshev_probe(p);
  EXPECT_NEAR(c.h_star_located, -std::sqrt(5.0) / 3.0, 1e-8);
  EXPECT_NEAR(c.y0_at_saddle, -1.0, 1e-12);
  EXPECT_NEAR(c.y0_at_saddle_claimed, -std::sqrt(5.0 / 4.0), 1e-15);
  EXPECT_EQ(c.residuals.size(), 20u);
  EXPECT_LE(c.max_L2_residual, 1e-6);
  ASSERT_EQ(c.windows.size(), 2u);
  const auto& annulus = c.windows[0];
  EXPECT_EQ(annulus.name, "annulus");
  EXPECT_FALSE(annulus.contains_h_star);
  EXPECT_TRUE(annulus.f_nonvanishing);
  EXPECT_EQ(annulus.claim_verdict, "confirmed");
  EXPECT_LT(annulus.frame_span, std::numbers::pi);
  const auto& below = c.windows[1];
  EXPECT_TRUE(below.contains_h_star);
  EXPECT_EQ(below.claim_verdict, "contradicted");
}

TEST(ChebyshevProbe, LargeKappaPutsZeroInAnnulus) {
  const ChebyshevReport c = chebyshev_probe(make_params(9.0));
  EXPECT_NEAR(c.h_star_located, residue_zero_level(9.0), 1e-8);
  EXPECT_TRUE(c.windows[0].contains_h_star);
  EXPECT_EQ(c.windows[0].claim_verdict, "contradicted");
}

TEST(Bound, ZeroWeights) {
  const auto p = make_params(4.0);
  const AnnulusBasis basis(p, 200);
  const BoundReport r = bound_pipeline(basis, {0, 0, 0, 0});
  EXPECT_EQ(r.I.count, 0);
  EXPECT_EQ(r.G.count, 0);
  EXPECT_EQ(r.R.count, 0);
  EXPECT_FALSE(r.violation());
}

TEST(Bound, ReconstructionMatchesAssembledI) {
  const auto p = make_params(2.0);
  const AnnulusBasis basis(p, 200);
  EXPECT_LE(basis.reconstruction_error(), 1e-6);
  const MuVector mu{0.5, -0.5, 0.5, 0.5};
  const double h = -0.55;
  const double direct = assemble_I(h, with_mu(p, mu), Route::basic);
  EXPECT_NEAR(basis.eval_I(h, mu), direct, 1e-6 * std::abs(direct));
}

TEST(Bound, SecondWeightHasNoZeros) {
  const auto p = make_params(4.0);
  const AnnulusBasis basis(p, 200);
  const auto w = basis.window();
  const auto r = count_zeros([&](double h) { return basis.eval_G(h, {0, 1, 0, 0}); }, w, 400);
  EXPECT_EQ(r.count, 0);
}

TEST(Bound, RandomSample) {
  for (double k : {1.5, 9.0}) {
    const auto p = make_params(k);
    const AnnulusBasis basis(p, 200);
    for (std::uint64_t t = 0; t < 25; ++t) {
      const auto v = random_sphere(trial_seed(1, 0, t), 4);
      const BoundReport r = bound_pipeline(basis, {v[0], v[1], v[2], v[3]});
      EXPECT_FALSE(r.violation()) << "kappa=" << k << " trial=" << t;
    }
  }
}

TEST(Random, SphereIsUnitAndDeterministic) {
  const auto a = random_sphere(trial_seed(42, 3, 7), 4);
  const auto b = random_sphere(trial_seed(42, 3, 7), 4);
  EXPECT_EQ(a, b);
  double n = 0.0;
  for (double x : a) n += x * x;
  EXPECT_NEAR(n, 1.0, 1e-15);
  EXPECT_NE(trial_seed(42, 3, 7), trial_seed(42, 3, 8));
}

TEST(Variation, SampledSolutionsRespectBound) {
  const auto p = make_params(4.0);
  const auto s = variation_sample_test(p, annulus_window(p), 100, 17);
  EXPECT_EQ(s.trials.size(), 100u);
  EXPECT_EQ(s.violations, 0);
  for (const auto& t : s.trials) EXPECT_LE(t.k, 6);
}

TEST(Vn, DegreeOneAndTwo) {
  const auto s1 = vn_sample_test(1, 200, make_params(4.0), 9);
  EXPECT_LE(s1.max_winding, 2);
  EXPECT_LE(s1.max_real, 2);
  EXPECT_EQ(s1.errors, 0);
  EXPECT_EQ(s1.winding_below_real, 0);
  const auto s2 = vn_sample_test(2, 200, make_params(2.0), 9);
  EXPECT_LE(s2.max_winding, 4);
  EXPECT_LE(s2.max_real, 4);
}

TEST(Window, AnnulusMargins) {
  const auto p = make_params(4.0);
  const auto w = annulus_window(p);
  EXPECT_NEAR(w.first, kCenterLevel + 1e-6, 1e-15);
  EXPECT_NEAR(w.second, -1.0 / 3.0 - 1e-6, 1e-15);
}

}  // namespace
}  // namespace q4
