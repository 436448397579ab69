// AD engine vs finite-difference geometry and closed forms.
#include <gtest/gtest.h>

#include "fd_geometry.hpp"
#include "spinlab/compatibility.hpp"
#include "test_support.hpp"

using namespace spinlab;
using spinlab::testing::catalog_members;
using spinlab::testing::sample;

namespace {

Eigen::Vector4d nu_coords(const ProductModel& P, const InducedPointData& d) {
  return d.nu.cwiseQuotient(P.frame_scale<double>(d.p));
}

double frame_riemann(const std::array<double, 81>& Rc, const InducedPointData& d, const Eigen::Matrix3d& g, int a,
                     int b, int c, int e) {
  const Eigen::Matrix3d& P = d.frame_coords;
  double s = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          s += P(i, a) * P(j, b) * P(k, c) * Rc[((l * 3 + i) * 3 + j) * 3 + k] * g.row(l).dot(P.col(e));
  return s;
}

}  // namespace

TEST(WeingartenOracle, ShapeOperatorMatchesSecondDifferences) {
  for (const auto& m : catalog_members()) {
    for (const auto& u : sample(*m.chart, 6, 101)) {
      InducedPointData d = induced_data(*m.chart, m.product, u);
      Eigen::Matrix3d Ec = oracle::shape_operator(*m.chart, m.product, u, nu_coords(m.product, d));
      Eigen::Matrix3d Ef = d.frame_coords.inverse() * Ec * d.frame_coords;
      EXPECT_LT((Ef - d.E).cwiseAbs().maxCoeff(), 1e-5) << m.label;
    }
  }
}

TEST(WeingartenOracle, NormalMatchesKernelUpToOrientation) {
  for (const auto& m : catalog_members()) {
    for (const auto& u : sample(*m.chart, 4, 102)) {
      InducedPointData d = induced_data(*m.chart, m.product, u);
      Eigen::Vector4d n = oracle::normal(*m.chart, m.product, u), e = nu_coords(m.product, d);
      EXPECT_LT(std::min((n - e).norm(), (n + e).norm()), 1e-8) << m.label;
    }
  }
}

TEST(ClosedForms, RoundSphereInFlatSpaceIsTotallyUmbilic) {
  auto m = spinlab::testing::member("round-sphere", 0, 0, {{"r", 0.8}});
  for (const auto& u : sample(*m.chart, 10, 103)) {
    InducedPointData d = induced_data(*m.chart, m.product, u);
    EXPECT_LT((d.E - Eigen::Matrix3d::Identity() / 0.8).cwiseAbs().maxCoeff(), 1e-12);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        if (a != b) EXPECT_NEAR(d.R(a, b, b, a), 1.0 / 0.64, 1e-10);
  }
}

TEST(ClosedForms, TubeCurvatureIsGeodesicCurvatureOfTheCircle) {
  // circle of coordinate radius a in M2(c): kappa = 1/a - c a / 4; other principal curvatures 0
  for (double c2 : {0.0, 1.0, -0.5, 2.0}) {
    const double a = 0.4, kappa = 1.0 / a - c2 * a / 4.0;
    auto m = spinlab::testing::member("sphere-circle-tube", 0.7, c2, {{"a", a}});
    for (const auto& u : sample(*m.chart, 5, 104)) {
      InducedPointData d = induced_data(*m.chart, m.product, u);
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(d.E);
      Eigen::Vector3d ev = es.eigenvalues().cwiseAbs();
      std::sort(ev.data(), ev.data() + 3);
      EXPECT_NEAR(ev(0), 0.0, 1e-12);
      EXPECT_NEAR(ev(1), 0.0, 1e-12);
      EXPECT_NEAR(ev(2), kappa, 1e-10);
    }
  }
}

TEST(ClosedForms, SliceIsTotallyGeodesicWithFactorCurvature) {
  for (auto [c1, c2] : {std::pair{1.0, 1.0}, {-1.0, 2.0}, {0.5, -0.3}}) {
    auto m = spinlab::testing::member("slice-geodesic", c1, c2);
    for (const auto& u : sample(*m.chart, 5, 105)) {
      InducedPointData d = induced_data(*m.chart, m.product, u);
      EXPECT_LT(d.E.cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_NEAR(d.R(0, 1, 1, 0), c1, 1e-10);  // e1, e2 = Chi e1 span the M1 factor
      EXPECT_NEAR(d.R(0, 2, 2, 0), 0.0, 1e-10);
      EXPECT_NEAR(d.h, -1.0, 1e-12);
      EXPECT_LT(d.V.norm(), 1e-12);
    }
  }
}

TEST(RiemannOracle, FullTensorMatchesNestedDifferences) {
  for (const auto& m : catalog_members()) {
    for (const auto& u : sample(*m.chart, 2, 106)) {
      InducedPointData d = induced_data(*m.chart, m.product, u);
      auto Rc = oracle::riemann(*m.chart, m.product, u);
      Eigen::Matrix3d g = oracle::metric(*m.chart, m.product, u);
      double worst = 0, scale = 1.0;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          for (int c = 0; c < 3; ++c)
            for (int e = 0; e < 3; ++e) {
              worst = std::max(worst, std::abs(frame_riemann(Rc, d, g, a, b, c, e) - d.R(a, b, c, e)));
              scale = std::max(scale, std::abs(d.R(a, b, c, e)));
            }
      // nested central differences: O(h^2) with h = 1e-3 on top of the inner differences
      EXPECT_LT(worst / scale, 1e-3) << m.label;
    }
  }
}

TEST(ChristoffelOracle, MetricMatchesAndConnectionIsMetric) {
  for (const auto& m : catalog_members()) {
    for (const auto& u : sample(*m.chart, 3, 107)) {
      InducedPointData d = induced_data(*m.chart, m.product, u);
      Eigen::Matrix3d g = oracle::metric(*m.chart, m.product, u);
      EXPECT_LT((g - d.g).cwiseAbs().maxCoeff(), 1e-8) << m.label;
      // frame is orthonormal for the oracle metric
      EXPECT_LT((d.frame_coords.transpose() * g * d.frame_coords - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(),
                1e-9);
      // nabla g = 0: g(nabla e_i, e_k) antisymmetric
      for (int a = 0; a < 3; ++a)
        EXPECT_LT((d.connection[a] + d.connection[a].transpose()).cwiseAbs().maxCoeff(), 1e-10);
    }
  }
}

TEST(ChristoffelOracle, FrameConnectionMatchesDifferencedFrame) {
  for (const auto& m : catalog_members()) {
    for (const auto& u : sample(*m.chart, 3, 108)) {
      InducedPointData d = induced_data(*m.chart, m.product, u);
      if (d.fallback) continue;
      const double h = 1e-5;
      std::array<Eigen::Matrix3d, 3> dP;
      for (int k = 0; k < 3; ++k) {
        Eigen::Vector3d e = Eigen::Vector3d::Zero();
        e(k) = h;
        dP[k] = (induced_data(*m.chart, m.product, u + e).frame_coords -
                 induced_data(*m.chart, m.product, u - e).frame_coords) /
                (2 * h);
      }
      auto G = oracle::christoffel(*m.chart, m.product, u, 1e-4);
      const Eigen::Matrix3d& P = d.frame_coords;
      double worst = 0;
      for (int a = 0; a < 3; ++a)
        for (int i = 0; i < 3; ++i) {
          Eigen::Vector3d v = Eigen::Vector3d::Zero();
          for (int k = 0; k < 3; ++k) {
            v += P(k, a) * dP[k].col(i);
            for (int l = 0; l < 3; ++l)
              for (int j = 0; j < 3; ++j) v(l) += P(k, a) * G[l](k, j) * P(j, i);
          }
          for (int k = 0; k < 3; ++k)
            worst = std::max(worst, std::abs(v.dot(d.g * P.col(k)) - d.connection[a](i, k)));
        }
      EXPECT_LT(worst, 1e-5) << m.label;
    }
  }
}

TEST(NablaXiOracle, DerivativeOfXiIsChiE) {
  for (const auto& m : catalog_members())
    for (const auto& u : sample(*m.chart, 5, 109))
      EXPECT_LT(nabla_xi_residual(induced_data(*m.chart, m.product, u)), 1e-10) << m.label;
}
