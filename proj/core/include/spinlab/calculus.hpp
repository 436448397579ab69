#pragma once

// Coordinate tensor calculus on a 3-dimensional chart, generic in the scalar type.
// Connection matrices: G[m](k, p) = Gamma^k_{mp}, so nabla_m w = d_m w + G[m] w.

#include <array>

#include <Eigen/Core>
#include <Eigen/LU>

namespace spinlab {

template <typename S>
using Mat3x = Eigen::Matrix<S, 3, 3>;

template <typename S>
std::array<Mat3x<S>, 3> christoffel(const Mat3x<S>& g, const std::array<Mat3x<S>, 3>& dg) {
  Mat3x<S> ginv = g.inverse();
  std::array<Mat3x<S>, 3> G;
  for (int m = 0; m < 3; ++m) {
    // lowered: Gamma_{l m p} = (d_m g_lp + d_p g_lm - d_l g_mp) / 2
    Mat3x<S> low;
    for (int l = 0; l < 3; ++l)
      for (int p = 0; p < 3; ++p) low(l, p) = 0.5 * (dg[m](l, p) + dg[p](l, m) - dg[l](m, p));
    G[m] = ginv * low;
  }
  return G;
}

/// nabla_m of a (1,1) tensor given its partial derivative d_m A.
template <typename S>
Mat3x<S> covariant_mixed(const Mat3x<S>& dA, const Mat3x<S>& A, const Mat3x<S>& Gm) {
  return dA + Gm * A - A * Gm;
}

template <typename S>
Eigen::Matrix<S, 3, 1> covariant_vector(const Eigen::Matrix<S, 3, 1>& dw,
                                        const Eigen::Matrix<S, 3, 1>& w, const Mat3x<S>& Gm) {
  return dw + Gm * w;
}

/// R(d_i, d_j) as a matrix acting on coordinate vectors, from G and dG[i][j] = d_i G[j].
inline std::array<Eigen::Matrix3d, 9> riemann_operators(
    const std::array<Eigen::Matrix3d, 3>& G,
    const std::array<std::array<Eigen::Matrix3d, 3>, 3>& dG) {
  std::array<Eigen::Matrix3d, 9> R;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      R[3 * i + j] = dG[i][j] - dG[j][i] + G[i] * G[j] - G[j] * G[i];
  return R;
}

/// Frame components R_abcd = g(R(e_a, e_b) e_c, e_d).
struct RiemannTensor {
  std::array<double, 81> r{};
  double operator()(int a, int b, int c, int d) const { return r[((a * 3 + b) * 3 + c) * 3 + d]; }
  double& operator()(int a, int b, int c, int d) { return r[((a * 3 + b) * 3 + c) * 3 + d]; }
};

/// P: coordinate components of the orthonormal frame (columns); Pinv its inverse.
inline RiemannTensor riemann_in_frame(const std::array<Eigen::Matrix3d, 9>& Rc,
                                      const Eigen::Matrix3d& P, const Eigen::Matrix3d& Pinv) {
  RiemannTensor out;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      Eigen::Matrix3d M = Eigen::Matrix3d::Zero();
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) M += P(i, a) * P(j, b) * Rc[3 * i + j];
      Eigen::Matrix3d Mf = Pinv * M * P;
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) out(a, b, c, d) = Mf(d, c);
    }
  return out;
}

}  // namespace spinlab
