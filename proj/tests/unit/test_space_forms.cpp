#include <gtest/gtest.h>

#include <random>

#include "spinlab/space_forms.hpp"

using namespace spinlab;

TEST(SurfaceModel, ChartRadiusAndConformalFactor) {
  EXPECT_TRUE(std::isinf(SurfaceModel(1.0).chart_radius()));
  EXPECT_NEAR(SurfaceModel(-1.0).chart_radius(), 2.0, 1e-15);
  SurfaceModel s(1.0);
  EXPECT_NEAR(s.lambda(1.0, 1.0), 1.0 / 1.5, 1e-15);
  EXPECT_FALSE(SurfaceModel(-4.0).contains(Eigen::Vector2d(1.0, 0.1)));
}

TEST(SurfaceModel, RicciFormIsCTimesKahlerForm) {
  SurfaceModel s(0.7);
  Eigen::Vector2d u(0.3, -0.4), x(1.0, 0.0), y(0.0, 1.0);
  const double l = s.lambda(u(0), u(1));
  // g(J d_u, d_v) = lambda^2
  EXPECT_NEAR(s.ricci_form(u, x, y), 0.7 * l * l, 1e-14);
  EXPECT_NEAR(s.ricci_form(u, y, x), -0.7 * l * l, 1e-14);
}

TEST(ProductModel, ComplexAndProductStructuresCommute) {
  Eigen::Matrix4d F = ProductModel::F(), J = ProductModel::J();
  EXPECT_LT((F * J - J * F).norm(), 1e-15);
  EXPECT_LT((F * F - Eigen::Matrix4d::Identity()).norm(), 1e-15);
  EXPECT_LT((J * J + Eigen::Matrix4d::Identity()).norm(), 1e-15);
}

TEST(ProductModel, FactorSignsFollowThePairing) {
  ProductModel a(1, 1, Pairing::AntiFirst), b(1, 1, Pairing::AntiSecond);
  EXPECT_EQ(a.factor_signs(Structure::S1), (std::array<int, 2>{1, 1}));
  EXPECT_EQ(a.factor_signs(Structure::S2), (std::array<int, 2>{-1, 1}));
  EXPECT_EQ(b.factor_signs(Structure::S2), (std::array<int, 2>{1, -1}));
}

TEST(ParallelSpinor, IsParallelForBothStructures) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-0.8, 0.8);
  for (auto [c1, c2] : {std::pair{0.0, 0.0}, {1.0, -0.5}, {-1.0, 2.0}}) {
    for (Pairing pr : {Pairing::AntiFirst, Pairing::AntiSecond}) {
      ProductModel P(c1, c2, pr);
      for (Structure s : {Structure::S1, Structure::S2}) {
        ParallelSpinorField f = parallel_spinor_field(P, s);
        EXPECT_NEAR(f.psi.norm(), 1.0, 1e-14);
        for (int t = 0; t < 20; ++t) {
          Eigen::Vector4d p(U(rng), U(rng), U(rng), U(rng)), dp(U(rng), U(rng), U(rng), U(rng));
          EXPECT_LT(f.residual(p, dp), 1e-12);
        }
      }
    }
  }
}

TEST(AuxiliaryCurvature, HolonomyMatchesOmegaN) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> U(-0.6, 0.6);
  for (auto [c1, c2] : {std::pair{1.0, 1.0}, {1.0, -0.5}, {-1.0, 2.0}}) {
    ProductModel P(c1, c2);
    std::vector<Eigen::Vector4d> pts;
    for (int t = 0; t < 5; ++t) pts.emplace_back(U(rng), U(rng), U(rng), U(rng));
    for (Structure s : {Structure::S1, Structure::S2}) EXPECT_LT(auxiliary_curvature_consistency(P, s, pts), 1e-6);
  }
}

TEST(AuxiliaryCurvature, OmegaNIsTheSignedRicciForms) {
  // S1: -(rho1 + rho2); S2 with the first factor anti-canonical: rho1 - rho2
  ProductModel P(0.8, -0.3);
  Eigen::Matrix4d w1 = P.omega_frame(Structure::S1), w2 = P.omega_frame(Structure::S2);
  EXPECT_NEAR(w1(0, 1), -0.8, 1e-15);
  EXPECT_NEAR(w1(2, 3), 0.3, 1e-15);
  EXPECT_NEAR(w2(0, 1), 0.8, 1e-15);
  EXPECT_NEAR(w2(2, 3), 0.3, 1e-15);
  EXPECT_LT((w1 + w1.transpose()).norm(), 1e-15);
}

TEST(AuxiliaryCurvature, PointOutsideTheChartIsRejected) {
  ProductModel P(-4.0, 0.0);
  EXPECT_THROW(auxiliary_curvature_consistency(P, Structure::S1, {Eigen::Vector4d(2, 0, 0, 0)}), std::exception);
}
