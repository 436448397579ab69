#include <gtest/gtest.h>

#include "spinlab/catalog.hpp"
#include "spinlab/errors.hpp"
#include "test_support.hpp"

using namespace spinlab;
using spinlab::testing::catalog_members;
using spinlab::testing::member;
using spinlab::testing::sample;

TEST(StructureIdentities, HoldOnEveryCatalogMember) {
  for (const auto& m : catalog_members())
    for (const auto& u : sample(*m.chart, 25, 301)) {
      InducedPointData d = induced_data(*m.chart, m.product, u);
      EXPECT_LT(max_residual(product_identity_residuals(d)), 1e-9) << m.label;
      EXPECT_LT(max_residual(induced_identity_residuals(d)), 1e-9) << m.label;
      EXPECT_LT(max_residual(verify_almost_contact(d)), 1e-9) << m.label;
      EXPECT_LT(max_residual(projection_residuals(d)), 1e-10) << m.label;
      EXPECT_LT(max_residual(structure_equation_residuals(d)), 1e-6) << m.label;
      EXPECT_LT(d.E_asymmetry, 1e-10) << m.label;
    }
}

TEST(StructureIdentities, TenInducedIdentitiesAreReported) {
  auto m = member("graph", 1.0, -0.5, {{"expr", spinlab::testing::kGraphExpr}});
  InducedPointData d = induced_data(*m.chart, m.product, Eigen::Vector3d(0.1, 0.2, -0.1));
  EXPECT_EQ(induced_identity_residuals(d).size(), 10u);
}

TEST(CurvatureEquations, GaussAndCodazziHoldOnTheCatalog) {
  for (const auto& m : catalog_members())
    for (const auto& u : sample(*m.chart, 10, 302)) {
      InducedPointData d = induced_data(*m.chart, m.product, u);
      EXPECT_LT(gauss_residual_max(d, m.product), 1e-5) << m.label;
      EXPECT_LT(codazzi_residual_max(d, m.product), 1e-5) << m.label;
    }
}

TEST(CurvatureEquations, PerturbedShapeOperatorBreaksGauss) {
  auto m = member("round-sphere", 1.0, 1.0, {{"r", 0.6}});
  ShapeModifier mod;
  mod.add_frame(0, 0) = 0.1;
  for (const auto& u : sample(*m.chart, 5, 303)) {
    InducedPointData d = induced_data(*m.chart, m.product, u, mod);
    EXPECT_GT(gauss_residual_max(d, m.product), 1e-2);
  }
}

TEST(CurvatureEquations, RiemannSymmetries) {
  for (const auto& m : catalog_members())
    for (const auto& u : sample(*m.chart, 3, 304)) {
      const RiemannTensor& R = induced_data(*m.chart, m.product, u).R;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          for (int c = 0; c < 3; ++c)
            for (int e = 0; e < 3; ++e) {
              EXPECT_NEAR(R(a, b, c, e), -R(b, a, c, e), 1e-9);
              EXPECT_NEAR(R(a, b, c, e), -R(a, b, e, c), 1e-9);
              EXPECT_NEAR(R(a, b, c, e), R(c, e, a, b), 1e-9);
            }
    }
}

TEST(Rank, ProductStructureSplitsTwoTwo) {
  for (const auto& m : catalog_members())
    for (const auto& u : sample(*m.chart, 10, 305)) {
      RankResult r = rank_check(induced_data(*m.chart, m.product, u));
      EXPECT_EQ(r.rank_plus, 2);
      EXPECT_EQ(r.rank_minus, 2);
    }
  // a wrong F is caught
  RankResult bad = rank_check(Eigen::Matrix4d::Identity());
  EXPECT_EQ(bad.rank_plus, 4);
  EXPECT_EQ(bad.rank_minus, 0);
}

TEST(Frame, AdaptedFrameIsOrthonormalWithSecondVectorJFirst) {
  for (const auto& m : catalog_members())
    for (const auto& u : sample(*m.chart, 5, 306)) {
      InducedPointData d = induced_data(*m.chart, m.product, u);
      EXPECT_LT((d.frame.transpose() * d.frame - Eigen::Matrix3d::Identity()).norm(), 1e-12);
      EXPECT_LT((d.frame.col(1) - apply_J<double>(d.frame.col(0))).norm(), 1e-12);
    }
}

TEST(MeanCurvature, RoundSphereOfUnitRadiusHasHOne) {
  auto m = member("round-sphere", 0, 0, {{"r", 1.0}});
  for (const auto& u : sample(*m.chart, 20, 307)) EXPECT_NEAR(induced_data(*m.chart, m.product, u).H, 1.0, 1e-12);
}

TEST(Catalog, RejectsBadKeysAndParameters) {
  ProductModel P(1.0, -1.0), flat(0, 0);
  EXPECT_THROW(make_chart("nope", {}, P), ConfigError);
  EXPECT_THROW(make_chart("flat-hyperplane", {}, P), ConfigError);
  EXPECT_THROW(make_chart("round-sphere", {{"r", -1.0}}, flat), ConfigError);
  EXPECT_THROW(make_chart("round-sphere", {{"r", 5.0}}, P), ConfigError);
  EXPECT_THROW(make_chart("graph", {}, P), ConfigError);
  EXPECT_THROW(make_chart("graph", {{"expr", 1.0}}, P), ConfigError);
  EXPECT_THROW(make_chart("graph", {{"expr", std::string("x+")}}, P), ConfigError);
}

TEST(Catalog, PointsOutsideTheChartRaiseDomainError) {
  auto m = member("round-sphere", 0, 0, {{"r", 0.5}});
  EXPECT_THROW(induced_data(*m.chart, m.product, Eigen::Vector3d(1.0, 0.0, 0.0)), DomainError);
}
