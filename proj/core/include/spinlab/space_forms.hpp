#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Core>

#include "spinlab/clifford.hpp"

namespace spinlab {

template <typename S>
using Vec2 = Eigen::Matrix<S, 2, 1>;
template <typename S>
using Vec3 = Eigen::Matrix<S, 3, 1>;
template <typename S>
using Vec4 = Eigen::Matrix<S, 4, 1>;
template <typename S>
using Mat3 = Eigen::Matrix<S, 3, 3>;
template <typename S>
using Mat4 = Eigen::Matrix<S, 4, 4>;

/// Gamma^k_ij of a surface metric; gamma[k](i, j).
struct Christoffels {
  std::array<Eigen::Matrix2d, 2> gamma;
};

/// Space form of curvature c in the conformal chart lambda^2 (du^2 + dv^2),
/// lambda = 1 / (1 + c|u|^2 / 4). For c > 0 the chart misses one point.
/// Frame: eps1 = lambda^-1 d_u, eps2 = lambda^-1 d_v = J eps1.
struct SurfaceModel {
  double c = 0.0;

  SurfaceModel() = default;
  explicit SurfaceModel(double curvature) : c(curvature) {}

  double chart_radius() const {
    return c < 0.0 ? 2.0 / std::sqrt(-c) : std::numeric_limits<double>::infinity();
  }
  bool contains(const Eigen::Vector2d& u) const { return u.norm() < chart_radius(); }

  template <typename S>
  S lambda(const S& u, const S& v) const {
    return 1.0 / (1.0 + (0.25 * c) * (u * u + v * v));
  }
  /// Gradient of log(lambda).
  template <typename S>
  Vec2<S> dlog_lambda(const S& u, const S& v) const {
    S l = lambda(u, v);
    return Vec2<S>((-0.5 * c) * l * u, (-0.5 * c) * l * v);
  }
  /// Levi-Civita connection 1-form theta with nabla eps1 = theta eps2, evaluated on a coordinate vector.
  template <typename S>
  S connection_form(const S& u, const S& v, const S& du, const S& dv) const {
    Vec2<S> p = dlog_lambda(u, v);
    return -p(1) * du + p(0) * dv;
  }

  Christoffels christoffels(const Eigen::Vector2d& u) const;
  /// Ricci form rho(X, Y) = c g(JX, Y) on coordinate vectors at u.
  double ricci_form(const Eigen::Vector2d& u, const Eigen::Vector2d& x,
                    const Eigen::Vector2d& y) const;
};

enum class Structure { S1 = 1, S2 = 2 };

/// Which factor carries the anti-canonical structure in S2.
enum class Pairing { AntiFirst, AntiSecond };

/// Tangent vector of P given by coordinate components at a chart point.
struct TangentVector {
  Eigen::Vector4d base;
  Eigen::Vector4d coords;
};

/// Riemannian product M1(c1) x M2(c2) with chart coordinates (u1, v1, u2, v2).
/// Tangent vectors in "frame components" refer to (eps1, eps2, eps3, eps4),
/// where eps1, eps2 span factor 1 and eps3, eps4 factor 2.
struct ProductModel {
  SurfaceModel m1, m2;
  Pairing pairing = Pairing::AntiFirst;

  ProductModel() = default;
  ProductModel(double c1, double c2, Pairing p = Pairing::AntiFirst) : m1(c1), m2(c2), pairing(p) {}

  bool contains(const Eigen::Vector4d& p) const {
    return m1.contains(p.head<2>()) && m2.contains(p.tail<2>());
  }

  /// +1 if the factor carries the canonical structure, -1 if anti-canonical.
  std::array<int, 2> factor_signs(Structure s) const {
    if (s == Structure::S1) return {1, 1};
    return pairing == Pairing::AntiFirst ? std::array<int, 2>{-1, 1} : std::array<int, 2>{1, -1};
  }

  /// Frame components = scale .* coordinate components.
  template <typename S>
  Vec4<S> frame_scale(const Vec4<S>& p) const {
    S l1 = m1.lambda(p(0), p(1)), l2 = m2.lambda(p(2), p(3));
    return Vec4<S>(l1, l1, l2, l2);
  }

  /// Connection forms (theta1, theta2) on a coordinate vector dp at p.
  template <typename S>
  std::array<S, 2> connection_forms(const Vec4<S>& p, const Vec4<S>& dp) const {
    return {m1.connection_form(p(0), p(1), dp(0), dp(1)),
            m2.connection_form(p(2), p(3), dp(2), dp(3))};
  }

  /// Auxiliary connection potential A with spin^c connection d + Gamma + (i/2) A.
  template <typename S>
  S aux_potential(Structure s, const Vec4<S>& p, const Vec4<S>& dp) const {
    auto th = connection_forms(p, dp);
    auto sg = factor_signs(s);
    return double(sg[0]) * th[0] + double(sg[1]) * th[1];
  }

  /// Levi-Civita connection in frame components: nabla_X Y = dY(X) + Theta(X) Y.
  template <typename S>
  Mat4<S> frame_connection(const Vec4<S>& p, const Vec4<S>& dp) const {
    auto th = connection_forms(p, dp);
    Mat4<S> r = Mat4<S>::Zero();
    r(1, 0) = th[0];
    r(0, 1) = -th[0];
    r(3, 2) = th[1];
    r(2, 3) = -th[1];
    return r;
  }

  static Eigen::Matrix4d F();
  static Eigen::Matrix4d J();

  /// Omega^N in frame components, constant in the frame.
  Eigen::Matrix4d omega_frame(Structure s) const;
  double curvature_form_Omega_N(Structure s, const TangentVector& x, const TangentVector& y) const;
};

/// Constant parallel spinor of a structure in the frame trivialization, with the
/// matrix of the spinor connection Gamma(X) + (i/2) A(X).
struct ParallelSpinorField {
  ProductModel product;
  Structure structure = Structure::S1;
  CVec psi;

  CMat connection(const Eigen::Vector4d& p, const Eigen::Vector4d& dp) const;
  /// |nabla_X psi| for X = dp at p.
  double residual(const Eigen::Vector4d& p, const Eigen::Vector4d& dp) const {
    return (connection(p, dp) * psi).norm();
  }
};

ParallelSpinorField parallel_spinor_field(const ProductModel& product, Structure s);

/// Model for spinors of P: the dimension 4 Clifford model.
const CliffordModel& ambient_clifford();

/// Compares the loop holonomy of the auxiliary connection around small coordinate squares
/// with Omega^N at the given chart points; returns the max deviation.
double auxiliary_curvature_consistency(const ProductModel& product, Structure s,
                                       const std::vector<Eigen::Vector4d>& points);

}  // namespace spinlab
