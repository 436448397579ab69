#include <gtest/gtest.h>

#include <random>

#include "spinlab/induced_spinc.hpp"
#include "test_support.hpp"

using namespace spinlab;
using spinlab::testing::catalog_members;
using spinlab::testing::member;
using spinlab::testing::sample;

namespace {
InducedSpinc restrict(const spinlab::testing::Member& m, const InducedPointData& d, int j) {
  return restrict_structure(m.product, d, j == 1 ? Structure::S1 : Structure::S2);
}
}  // namespace

TEST(InducedSpinc, CliffordRelationsAndVolumeSign) {
  for (const auto& m : catalog_members())
    for (const auto& u : sample(*m.chart, 5, 401)) {
      InducedPointData d = induced_data(*m.chart, m.product, u);
      for (int j = 1; j <= 2; ++j) {
        InducedSpinc sp = restrict(m, d, j);
        EXPECT_LT(max_residual(clifford_relations(sp)), 1e-12) << m.label;
        EXPECT_NEAR(std::abs(sp.volume_sign), 1.0, 1e-12);
        // gamma(e1) gamma(e2) gamma(xi) acts on the restricted space as the volume sign
        CVec v = sp.gamma[0] * sp.gamma[1] * sp.gamma[2] * sp.psi;
        EXPECT_LT((v - sp.volume_sign * sp.psi).norm(), 1e-12);
      }
    }
}

TEST(InducedSpinc, SpinorNormIsConstant) {
  for (const auto& m : catalog_members()) {
    double lo = 1e300, hi = -1e300;
    for (const auto& u : sample(*m.chart, 100, 402)) {
      InducedPointData d = induced_data(*m.chart, m.product, u);
      double n = restrict(m, d, 2).psi.norm();
      lo = std::min(lo, n);
      hi = std::max(hi, n);
    }
    EXPECT_LT(hi - lo, 1e-8) << m.label;
  }
}

TEST(InducedSpinc, KillingAlgebraicOmegaAndRestriction) {
  for (const auto& m : catalog_members())
    for (const auto& u : sample(*m.chart, 10, 403)) {
      InducedPointData d = induced_data(*m.chart, m.product, u);
      for (int j = 1; j <= 2; ++j) {
        InducedSpinc sp = restrict(m, d, j);
        EXPECT_LT(killing_residual_max(sp, d), 1e-6) << m.label;
        EXPECT_LT(algebraic_condition(sp, d), 1e-8) << m.label;
        EXPECT_LT(omega_formula_check(sp, d), 1e-6) << m.label;
        EXPECT_LT(restriction_relation_residual(sp), 1e-8) << m.label;
      }
      EXPECT_LT(max_residual(spinor_identities(restrict(m, d, 2), d)), 1e-8) << m.label;
      ProjectionSpinorResult pr = projection_spinor_check(d);
      EXPECT_LT(std::max(pr.first, pr.second), 1e-10) << m.label;
    }
}

TEST(InducedSpinc, SpinCaseHasVanishingOmegaAndEqualStructures) {
  auto m = member("graph", 0, 0, {{"expr", spinlab::testing::kGraphExpr}});
  for (const auto& u : sample(*m.chart, 5, 404)) {
    InducedPointData d = induced_data(*m.chart, m.product, u);
    InducedSpinc s1 = restrict(m, d, 1), s2 = restrict(m, d, 2);
    EXPECT_LT(s1.Omega.cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT(s2.Omega.cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(InducedSpinc, MixedPointOfTheSphere) {
  // along u = (0, t, 0) the normal moves from the first factor (h = +-1) to the second; bisect h = 0
  auto m = member("round-sphere", 1.0, -0.5, {{"r", 0.5}});
  auto h_at = [&](double t) { return induced_data(*m.chart, m.product, Eigen::Vector3d(0.0, t, 0.0)).h; };
  double lo = 0.0, hi = 0.49;
  ASSERT_LT(h_at(lo) * h_at(hi), 0.0);
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    (h_at(lo) * h_at(mid) <= 0.0 ? hi : lo) = mid;
  }
  InducedPointData d = induced_data(*m.chart, m.product, Eigen::Vector3d(0.0, 0.5 * (lo + hi), 0.0));
  EXPECT_NEAR(d.h, 0.0, 1e-12);
  EXPECT_NEAR(d.V.norm(), 1.0, 1e-12);
  for (int j = 1; j <= 2; ++j) {
    InducedSpinc sp = restrict(m, d, j);
    EXPECT_LT(algebraic_condition(sp, d), 1e-8);
    EXPECT_LT(omega_formula_check(sp, d), 1e-10);
    EXPECT_LT(killing_residual_max(sp, d), 1e-8);
  }
  EXPECT_LT(max_residual(spinor_identities(restrict(m, d, 2), d)), 1e-8);
}

TEST(InducedSpinc, FlippedCliffordFailsTheKillingEquation) {
  auto m = member("round-sphere", 1.0, 1.0, {{"r", 0.6}});
  InducedPointData d = induced_data(*m.chart, m.product, Eigen::Vector3d(0.1, 0.2, 0.3));
  InducedSpinc flipped = with_flipped_orientation(restrict(m, d, 1));
  EXPECT_GT(killing_residual_max(flipped, d), 1e-2);
}

TEST(InducedSpinc, OmegaClosedFormIsAntisymmetric) {
  std::mt19937_64 rng(405);
  std::normal_distribution<double> N(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    Eigen::Vector3d V(N(rng), N(rng), 0.0);
    for (int j = 1; j <= 2; ++j) {
      Eigen::Matrix3d W = omega_closed_form(j, N(rng), N(rng), N(rng), V);
      EXPECT_LT((W + W.transpose()).cwiseAbs().maxCoeff(), 1e-14);
    }
  }
}
