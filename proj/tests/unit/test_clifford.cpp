#include <gtest/gtest.h>

#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "spinlab/clifford.hpp"
#include "spinlab/errors.hpp"

using namespace spinlab;

namespace {

Eigen::VectorXd gaussian(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> N(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = N(rng);
  return v;
}

std::vector<double> sorted_imag(const CMat& K) {
  Eigen::ComplexEigenSolver<CMat> es(K, false);
  std::vector<double> v;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    EXPECT_NEAR(es.eigenvalues()(i).real(), 0.0, 1e-12);
    v.push_back(es.eigenvalues()(i).imag());
  }
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(Clifford, GeneratorsAnticommuteAndAreSkew) {
  for (int m = 2; m <= 4; ++m) {
    CliffordModel M = build_clifford(m);
    const int n = M.spinor_dim();
    for (int i = 0; i < m; ++i) {
      EXPECT_LT((M.generators[i].adjoint() + M.generators[i]).norm(), 1e-14);
      for (int j = 0; j < m; ++j) {
        CMat ac = M.generators[i] * M.generators[j] + M.generators[j] * M.generators[i];
        CMat want = (i == j ? -2.0 : 0.0) * CMat::Identity(n, n);
        EXPECT_LT((ac - want).norm(), 1e-14) << m << " " << i << " " << j;
      }
    }
  }
}

TEST(Clifford, VolumeElement) {
  CliffordModel M3 = build_clifford(3);
  EXPECT_LT((M3.volume - CMat::Identity(2, 2)).norm(), 1e-14);
  for (int m : {2, 4}) {
    CliffordModel M = build_clifford(m);
    const int n = M.spinor_dim();
    EXPECT_LT((M.volume * M.volume - CMat::Identity(n, n)).norm(), 1e-14);
    ASSERT_TRUE(M.chirality.has_value());
    EXPECT_LT((M.chirality->first + M.chirality->second - CMat::Identity(n, n)).norm(), 1e-14);
    // odd elements swap chirality
    EXPECT_LT((M.chirality->first * M.generators[0] * M.chirality->first).norm(), 1e-14);
  }
}

TEST(Clifford, RandomVectorsSatisfyTheCliffordRelation) {
  std::mt19937_64 rng(1);
  for (int m = 2; m <= 4; ++m) {
    CliffordModel M = build_clifford(m);
    const int n = M.spinor_dim();
    for (int t = 0; t < 100; ++t) {
      Eigen::VectorXd x = gaussian(rng, m), y = gaussian(rng, m);
      CMat X = M.act(x), Y = M.act(y);
      EXPECT_LT((X * Y + Y * X + 2.0 * x.dot(y) * CMat::Identity(n, n)).norm(), 1e-12);
    }
  }
}

TEST(Clifford, KahlerActionSpectrum) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    for (int m : {2, 4}) {
      Eigen::MatrixXd J0 = Eigen::MatrixXd::Zero(m, m);
      for (int k = 0; k < m; k += 2) {
        J0(k + 1, k) = 1;
        J0(k, k + 1) = -1;
      }
      Eigen::MatrixXd A(m, m);
      for (int k = 0; k < m; ++k) A.col(k) = gaussian(rng, m);
      Eigen::MatrixXd Q = Eigen::HouseholderQR<Eigen::MatrixXd>(A).householderQ();
      auto ev = sorted_imag(kahler_action(build_clifford(m), Q * J0 * Q.transpose()));
      std::vector<double> want = m == 2 ? std::vector<double>{-1, 1} : std::vector<double>{-2, 0, 0, 2};
      for (size_t k = 0; k < ev.size(); ++k) EXPECT_NEAR(ev[k], want[k], 1e-12);
    }
  }
}

TEST(Clifford, ProductSpinorsMatchTheDimensionFourModel) {
  std::mt19937_64 rng(3);
  CliffordModel M4 = build_clifford(4);
  for (int t = 0; t < 50; ++t) {
    Eigen::VectorXd x1 = gaussian(rng, 2), x2 = gaussian(rng, 2);
    CVec p1 = gaussian(rng, 2).cast<cplx>() + cplx(0, 1) * gaussian(rng, 2).cast<cplx>();
    CVec p2 = gaussian(rng, 2).cast<cplx>() + cplx(0, 1) * gaussian(rng, 2).cast<cplx>();
    Eigen::VectorXd x(4);
    x << x1, x2;
    EXPECT_LT((product_clifford(x1, x2, p1, p2) - M4.act(x) * tensor(p1, p2)).norm(), 1e-12);
  }
}

TEST(Clifford, SymmetricCommutatorIdentity) {
  std::mt19937_64 rng(4);
  CliffordModel M3 = build_clifford(3);
  for (int t = 0; t < 1000; ++t) {
    Eigen::Matrix3d A;
    for (int k = 0; k < 3; ++k) A.col(k) = gaussian(rng, 3);
    EXPECT_LT(commutator_residual(0.5 * (A + A.transpose()), M3), 1e-12);
  }
}

TEST(Clifford, CommutatorResidualRejectsAsymmetricE) {
  Eigen::Matrix3d E = Eigen::Matrix3d::Zero();
  E(0, 1) = 1.0;  // not symmetric
  EXPECT_THROW(commutator_residual(E, build_clifford(3)), DomainError);
}

TEST(Clifford, HermitianProductIsLinearInTheFirstSlot) {
  CVec a(2), b(2);
  a << cplx(1, 2), cplx(0, 1);
  b << cplx(3, 0), cplx(1, -1);
  EXPECT_LT(std::abs(herm(cplx(0, 1) * a, b) - cplx(0, 1) * herm(a, b)), 1e-15);
}
