#include "spinlab/hypersurface.hpp"

#include <algorithm>

#include <Eigen/SVD>

namespace spinlab {

Eigen::Matrix4d InducedPointData::adapted_basis() const {
  Eigen::Matrix4d b;
  b.leftCols<3>() = frame;
  b.col(3) = nu;
  return b;
}

InducedPointData induced_data(const HypersurfaceChart& chart, const ProductModel& product,
                              const Eigen::Vector3d& u, const ShapeModifier& mod) {
  const SecondOrder<double> s = second_order<double>(chart, product, u, mod);
  const SecondOrder<D1> s1 = second_order<D1>(chart, product, ad::seed<double, 3>(u), mod);
  const FirstOrder<double>& fo = s.fo;

  InducedPointData d;
  d.u = u;
  d.p = fo.p;
  d.dp = fo.dp;
  d.T = fo.T;
  d.g = fo.g;
  d.nu = fo.nu;
  d.xi4 = fo.xi;
  d.V4 = fo.V;
  d.frame = fo.frame;
  d.frame_coords = fo.frame_coords;
  d.fallback = fo.fallback;
  d.h = fo.h;
  d.H = s.H;

  const Eigen::Matrix3d& P = fo.frame_coords;
  const Eigen::Matrix3d Pinv = fo.frame.transpose() * fo.T;
  auto to_frame = [&](const Eigen::Matrix3d& A) -> Eigen::Matrix3d { return Pinv * A * P; };

  d.E = to_frame(s.E_coord);
  d.E_asymmetry = (d.E - d.E.transpose()).cwiseAbs().maxCoeff();
  d.f = to_frame(fo.f_coord);
  d.chi = to_frame(fo.chi_coord);
  d.V = fo.frame.transpose() * fo.V;

  // partial derivatives of E, H and the Christoffel matrices
  std::array<Eigen::Matrix3d, 3> dE;
  std::array<std::array<Eigen::Matrix3d, 3>, 3> dG;
  Eigen::Vector3d dHc;
  for (int m = 0; m < 3; ++m) {
    dE[m] = ad::der(s1.E_coord, m);
    dHc(m) = s1.H.d[m];
    for (int j = 0; j < 3; ++j) dG[m][j] = ad::der(s1.G[j], m);
  }

  std::array<Eigen::Matrix3d, 3> nablaE_c, nablaf_c;
  std::array<Eigen::Vector3d, 3> nablaV_c, nablaxi_c;
  Eigen::Vector3d dh_c;
  for (int m = 0; m < 3; ++m) {
    nablaE_c[m] = covariant_mixed<double>(dE[m], s.E_coord, s.G[m]);
    nablaf_c[m] = covariant_mixed<double>(s.d[m].f_coord, fo.f_coord, s.G[m]);
    nablaV_c[m] = covariant_vector<double>(s.d[m].V_coord, fo.V_coord, s.G[m]);
    Eigen::Vector3d xi_c = fo.frame_coords.col(2);
    nablaxi_c[m] = covariant_vector<double>(s.d[m].frame_coords.col(2), xi_c, s.G[m]);
    dh_c(m) = s.d[m].h;
  }

  for (int a = 0; a < 3; ++a) {
    Eigen::Matrix3d nE = Eigen::Matrix3d::Zero(), nf = Eigen::Matrix3d::Zero();
    Eigen::Vector3d nV = Eigen::Vector3d::Zero(), nxi = Eigen::Vector3d::Zero();
    Eigen::Matrix3d conn = Eigen::Matrix3d::Zero();
    Eigen::Matrix<double, 4, 4> dframe = Eigen::Matrix4d::Zero();
    for (int m = 0; m < 3; ++m) {
      const double w = P(m, a);
      nE += w * nablaE_c[m];
      nf += w * nablaf_c[m];
      nV += w * nablaV_c[m];
      nxi += w * nablaxi_c[m];
      // nabla_m e_i in coordinates, column i
      conn += w * (s.d[m].frame_coords + s.G[m] * P);
      dframe.leftCols<3>() += w * s.d[m].frame;
      dframe.col(3) += w * s.d[m].nu;
    }
    d.nablaE[a] = Pinv * nE * P;
    d.nabla_f[a] = Pinv * nf * P;
    d.nabla_V[a] = Pinv * nV;
    d.nabla_xi[a] = Pinv * nxi;
    // conn columns are coordinates of nabla_{e_a} e_i; frame components give g(., e_k)
    d.connection[a] = (Pinv * conn).transpose();
    d.frame_derivative[a] = dframe.transpose() * d.adapted_basis();
    d.velocity[a] = fo.dp * P.col(a);
  }
  d.dh = P.transpose() * dh_c;
  d.dH = P.transpose() * dHc;
  d.R = riemann_in_frame(riemann_operators(s.G, dG), P, Pinv);
  return d;
}

double max_residual(const ResidualBundle& b) {
  double m = 0.0;
  for (const auto& r : b) m = std::max(m, r.value);
  return m;
}

ResidualBundle product_identity_residuals(const InducedPointData& d) {
  const Eigen::Matrix3d& f = d.f;
  const Eigen::Vector3d& V = d.V;
  const Eigen::Matrix3d id = Eigen::Matrix3d::Identity();
  return {
      {"f_symmetric", (f - f.transpose()).cwiseAbs().maxCoeff()},
      {"f2_plus_VV", (f * f + V * V.transpose() - id).cwiseAbs().maxCoeff()},
      {"fV_plus_hV", (f * V + d.h * V).norm()},
      {"h2_plus_V2", std::abs(d.h * d.h + V.squaredNorm() - 1.0)},
      {"trace_f_plus_h", std::abs(f.trace() + d.h)},
  };
}

ResidualBundle induced_identity_residuals(const InducedPointData& d) {
  const Eigen::Matrix3d& f = d.f;
  const Eigen::Matrix3d& chi = d.chi;
  const Eigen::Vector3d& V = d.V;
  const Eigen::Vector3d xi = Eigen::Vector3d::UnitZ();
  const Eigen::Matrix4d B = d.adapted_basis();
  const Eigen::Matrix4d Fb = B.transpose() * ProductModel::F() * B;
  const Eigen::Matrix4d Jb = B.transpose() * ProductModel::J() * B;

  double i1 = std::max((chi + chi.transpose()).cwiseAbs().maxCoeff(), chi.col(2).norm());
  double i2 = (Jb * Fb - Fb * Jb).cwiseAbs().maxCoeff();
  double i3 = 0.0, i4 = 0.0;
  for (int a = 0; a < 3; ++a) {
    Eigen::Vector3d X = Eigen::Vector3d::Unit(a);
    double eta = X(2);
    i3 = std::max(i3, std::abs(V.dot(chi * X) + eta * d.h - (f * X)(2)));
    i4 = std::max(i4, (f * chi * X + eta * V - chi * f * X + V.dot(X) * xi).norm());
  }
  double i5 = std::abs(V(2));
  double i6 = (f * xi - d.h * xi + chi * V).norm();
  double i7 = std::abs((f * V)(2));
  double i8 = std::max({std::abs(f(1, 0)), std::abs(f(0, 0) + d.h), std::abs(f(1, 1) + d.h)});
  double i9 = (ProductModel::J() * d.V4 - d.frame * (chi * V)).norm();
  double i10 = (ProductModel::F() * d.xi4 - d.frame * (f * xi)).norm();
  return {{"chi_antisymmetric", i1}, {"JF_FJ", i2},      {"eta_f", i3},
          {"f_chi", i4},            {"eta_V", i5},       {"f_xi", i6},
          {"eta_fV", i7},          {"f_diagonal", i8}, {"JV_chiV", i9},
          {"F_xi", i10}};
}

ResidualBundle verify_almost_contact(const InducedPointData& d) {
  const Eigen::Matrix3d id = Eigen::Matrix3d::Identity();
  const Eigen::Vector3d xi = Eigen::Vector3d::UnitZ();
  const Eigen::Matrix3d chi2 = d.chi * d.chi + id - xi * xi.transpose();
  Eigen::Vector3d normal_dot = d.T.transpose() * d.nu;
  return {
      {"nu_unit", std::abs(d.nu.norm() - 1.0)},
      {"nu_normal", normal_dot.cwiseAbs().maxCoeff() / d.T.norm()},
      {"xi_unit", std::abs(d.xi4.norm() - 1.0)},
      {"chi_xi", d.chi.col(2).norm()},
      {"chi_squared", chi2.cwiseAbs().maxCoeff()},
      {"frame_orthonormal", (d.frame.transpose() * d.frame - id).cwiseAbs().maxCoeff()},
      {"e2_is_chi_e1", (d.chi.col(0) - Eigen::Vector3d::UnitY()).norm()},
  };
}

Eigen::Vector3d gauss_rhs(const Eigen::Matrix3d& E, const Eigen::Matrix3d& f, double c1, double c2,
                          int x, int y, int z) {
  const Eigen::Vector3d X = Eigen::Vector3d::Unit(x), Y = Eigen::Vector3d::Unit(y),
                        Z = Eigen::Vector3d::Unit(z);
  auto wedge = [&](const Eigen::Vector3d& a, const Eigen::Vector3d& b) -> Eigen::Vector3d {
    return b.dot(Z) * a - a.dot(Z) * b;
  };
  Eigen::Vector3d EX = E * X, EY = E * Y;
  return 0.25 * c1 * wedge(X + f * X, Y + f * Y) + 0.25 * c2 * wedge(X - f * X, Y - f * Y) +
         EY.dot(Z) * EX - EX.dot(Z) * EY;
}

double gauss_residual(const InducedPointData& d, const ProductModel& product, int x, int y, int z) {
  Eigen::Vector3d lhs;
  for (int w = 0; w < 3; ++w) lhs(w) = d.R(x, y, z, w);
  return (lhs - gauss_rhs(d.E, d.f, product.m1.c, product.m2.c, x, y, z)).norm();
}

double gauss_residual_max(const InducedPointData& d, const ProductModel& product) {
  double m = 0.0;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      for (int z = 0; z < 3; ++z) m = std::max(m, gauss_residual(d, product, x, y, z));
  return m;
}

double codazzi_rhs(const Eigen::Matrix3d& f, const Eigen::Vector3d& V, double c1, double c2, int x,
                   int y, int z) {
  const Eigen::Vector3d X = Eigen::Vector3d::Unit(x), Y = Eigen::Vector3d::Unit(y),
                        Z = Eigen::Vector3d::Unit(z);
  const double VX = V.dot(X), VY = V.dot(Y);
  return 0.25 * c1 * ((f * Y).dot(Z) * VX - (f * X).dot(Z) * VY + Y.dot(Z) * VX - X.dot(Z) * VY) -
         0.25 * c2 * (Y.dot(Z) * VX - Y.dot(f * Z) * VX - X.dot(Z) * VY + X.dot(f * Z) * VY);
}

double codazzi_residual(const InducedPointData& d, const ProductModel& product, int x, int y, int z) {
  return std::abs(d.codazzi_lhs(x, y, z) - codazzi_rhs(d.f, d.V, product.m1.c, product.m2.c, x, y, z));
}

double codazzi_residual_max(const InducedPointData& d, const ProductModel& product) {
  double m = 0.0;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      for (int z = 0; z < 3; ++z) m = std::max(m, codazzi_residual(d, product, x, y, z));
  return m;
}

ResidualBundle structure_equation_residuals(const InducedPointData& d) {
  double s4 = 0.0, s5 = 0.0, s6 = 0.0;
  for (int a = 0; a < 3; ++a) {
    const Eigen::Vector3d X = Eigen::Vector3d::Unit(a);
    const Eigen::Vector3d EX = d.E * X;
    for (int b = 0; b < 3; ++b) {
      const Eigen::Vector3d Y = Eigen::Vector3d::Unit(b);
      Eigen::Vector3d lhs = d.nabla_f[a] * Y;
      Eigen::Vector3d rhs = Y.dot(d.V) * EX + EX.dot(Y) * d.V;
      s4 = std::max(s4, (lhs - rhs).norm());
    }
    s5 = std::max(s5, (d.nabla_V[a] - (-d.f * EX + d.h * EX)).norm());
    s6 = std::max(s6, std::abs(d.dh(a) + 2.0 * (d.E * d.V).dot(X)));
  }
  return {{"nabla_f", s4}, {"nabla_V", s5}, {"dh", s6}};
}

Projections projections(const Eigen::Vector4d& x) {
  Projections p;
  p.pi1 = Eigen::Vector4d(x(0), x(1), 0, 0);
  p.pi2 = Eigen::Vector4d(0, 0, x(2), x(3));
  return p;
}

ResidualBundle projection_residuals(const InducedPointData& d) {
  const Eigen::Vector4d& V = d.V4;
  const Eigen::Vector4d& nu = d.nu;
  const double h = d.h, v2 = V.squaredNorm();
  auto pV = projections(V), pxi = projections(d.xi4), pnu = projections(nu);
  return {
      {"pi1_V", (pV.pi1 - 0.5 * ((1 - h) * V + v2 * nu)).norm()},
      {"pi2_V", (pV.pi2 - 0.5 * ((h + 1) * V - v2 * nu)).norm()},
      {"pi1_xi", (pxi.pi1 + apply_J<double>(pnu.pi1)).norm()},
      {"pi2_xi", (pxi.pi2 + apply_J<double>(pnu.pi2)).norm()},
      {"pi1_nu", (pnu.pi1 - 0.5 * ((h + 1) * nu + V)).norm()},
      {"pi2_nu", (pnu.pi2 - 0.5 * ((1 - h) * nu - V)).norm()},
  };
}

Eigen::Matrix4d product_structure_matrix(const Eigen::Matrix3d& f, const Eigen::Vector3d& V, double h) {
  Eigen::Matrix4d F;
  F.topLeftCorner<3, 3>() = f;
  F.block<3, 1>(0, 3) = V;
  F.block<1, 3>(3, 0) = V.transpose();
  F(3, 3) = h;
  return F;
}

RankResult rank_check(const Eigen::Matrix4d& F, double threshold) {
  auto rank = [threshold](const Eigen::Matrix4d& m) {
    Eigen::JacobiSVD<Eigen::Matrix4d> svd(m);
    int r = 0;
    for (int i = 0; i < 4; ++i)
      if (svd.singularValues()(i) > threshold) ++r;
    return r;
  };
  const Eigen::Matrix4d id = Eigen::Matrix4d::Identity();
  return {rank(0.5 * (F + id)), rank(0.5 * (F - id))};
}

RankResult rank_check(const InducedPointData& d) {
  return rank_check(product_structure_matrix(d.f, d.V, d.h));
}

}  // namespace spinlab
