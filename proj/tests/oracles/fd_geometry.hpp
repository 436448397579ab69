#pragma once
// Finite-difference reference geometry built only from chart positions and the conformal
// factors lambda = 1 / (1 + c|u|^2/4) of the two factors. Nothing here calls the AD engine.

#include <array>
#include <cmath>

#include <Eigen/Dense>

#include "spinlab/hypersurface.hpp"

namespace spinlab::oracle {

using M3 = Eigen::Matrix3d;
using V3 = Eigen::Vector3d;
using V4 = Eigen::Vector4d;

inline double lam(double c, double u, double v) { return 1.0 / (1.0 + 0.25 * c * (u * u + v * v)); }

/// Ambient metric diag(l1^2, l1^2, l2^2, l2^2) at p.
inline Eigen::Matrix4d ambient_metric(const ProductModel& P, const V4& p) {
  double l1 = lam(P.m1.c, p(0), p(1)), l2 = lam(P.m2.c, p(2), p(3));
  return Eigen::Vector4d(l1 * l1, l1 * l1, l2 * l2, l2 * l2).asDiagonal();
}

/// Ambient Christoffels Gamma^k_ij of the product of conformal metrics; G[k](i, j).
inline std::array<Eigen::Matrix4d, 4> ambient_christoffel(const ProductModel& P, const V4& p) {
  std::array<Eigen::Matrix4d, 4> G;
  for (auto& m : G) m.setZero();
  for (int f = 0; f < 2; ++f) {
    double c = f == 0 ? P.m1.c : P.m2.c;
    double u = p(2 * f), v = p(2 * f + 1);
    double l = lam(c, u, v);
    // d log lambda
    double du = -0.5 * c * l * u, dv = -0.5 * c * l * v;
    double d[2] = {du, dv};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
          double val = (i == k ? d[j] : 0.0) + (j == k ? d[i] : 0.0) - (i == j ? d[k] : 0.0);
          G[2 * f + k](2 * f + i, 2 * f + j) = val;
        }
  }
  return G;
}

inline Eigen::Matrix<double, 4, 3> jacobian(const HypersurfaceChart& c, const V3& u, double h = 1e-5) {
  Eigen::Matrix<double, 4, 3> J;
  for (int k = 0; k < 3; ++k) {
    V3 e = V3::Zero();
    e(k) = h;
    J.col(k) = (c.position(V3(u + e)) - c.position(V3(u - e))) / (2 * h);
  }
  return J;
}

inline M3 metric(const HypersurfaceChart& c, const ProductModel& P, const V3& u) {
  auto J = jacobian(c, u);
  return J.transpose() * ambient_metric(P, c.position(u)) * J;
}

/// Christoffels of the induced metric by central differences of the metric; G[k](i, j).
inline std::array<M3, 3> christoffel(const HypersurfaceChart& c, const ProductModel& P, const V3& u,
                                     double h = 1e-3) {
  std::array<M3, 3> dg;
  for (int k = 0; k < 3; ++k) {
    V3 e = V3::Zero();
    e(k) = h;
    dg[k] = (metric(c, P, u + e) - metric(c, P, u - e)) / (2 * h);
  }
  M3 ginv = metric(c, P, u).inverse();
  std::array<M3, 3> G;
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0;
        for (int l = 0; l < 3; ++l) s += 0.5 * ginv(k, l) * (dg[i](l, j) + dg[j](l, i) - dg[l](i, j));
        G[k](i, j) = s;
      }
  return G;
}

/// R^l_ijk with R(d_i, d_j) d_k = R^l_ijk d_l; index [((l*3+i)*3+j)*3+k].
inline std::array<double, 81> riemann(const HypersurfaceChart& c, const ProductModel& P, const V3& u,
                                      double h = 1e-3) {
  std::array<std::array<M3, 3>, 3> dG;  // dG[m][k](i, j) = d_m Gamma^k_ij
  for (int m = 0; m < 3; ++m) {
    V3 e = V3::Zero();
    e(m) = h;
    auto Gp = christoffel(c, P, u + e), Gm = christoffel(c, P, u - e);
    for (int k = 0; k < 3; ++k) dG[m][k] = (Gp[k] - Gm[k]) / (2 * h);
  }
  auto G = christoffel(c, P, u);
  std::array<double, 81> R{};
  for (int l = 0; l < 3; ++l)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          double s = dG[i][l](j, k) - dG[j][l](i, k);
          for (int m = 0; m < 3; ++m) s += G[l](i, m) * G[m](j, k) - G[l](j, m) * G[m](i, k);
          R[((l * 3 + i) * 3 + j) * 3 + k] = s;
        }
  return R;
}

/// Unit normal in coordinate components, from the kernel of J^T G.
inline V4 normal(const HypersurfaceChart& c, const ProductModel& P, const V3& u) {
  auto J = jacobian(c, u);
  Eigen::Matrix4d Gm = ambient_metric(P, c.position(u));
  Eigen::Matrix<double, 3, 4> A = J.transpose() * Gm;
  Eigen::FullPivLU<Eigen::Matrix<double, 3, 4>> lu(A);
  V4 n = lu.kernel().col(0);
  return n / std::sqrt(n.dot(Gm * n));
}

/// Shape operator in coordinates, E = g^-1 II with II_ij = G(d_i d_j p + Gamma^P(d_i p, d_j p), nu),
/// for the normal with the given orientation.
inline M3 shape_operator(const HypersurfaceChart& c, const ProductModel& P, const V3& u, const V4& nu,
                         double h = 1e-4) {
  auto J = jacobian(c, u);
  V4 p = c.position(u);
  auto GP = ambient_christoffel(P, p);
  Eigen::Matrix4d Gm = ambient_metric(P, p);
  M3 II;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      V3 ei = V3::Zero(), ej = V3::Zero();
      ei(i) = h;
      ej(j) = h;
      V4 dd = (c.position(V3(u + ei + ej)) - c.position(V3(u + ei - ej)) - c.position(V3(u - ei + ej)) +
               c.position(V3(u - ei - ej))) /
              (4 * h * h);
      for (int k = 0; k < 4; ++k) dd(k) += J.col(i).dot(GP[k] * J.col(j));
      II(i, j) = dd.dot(Gm * nu);
    }
  return metric(c, P, u).inverse() * II;
}

}  // namespace spinlab::oracle
