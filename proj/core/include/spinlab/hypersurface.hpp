#pragma once

#include <array>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/LU>

#include "spinlab/calculus.hpp"
#include "spinlab/dual.hpp"
#include "spinlab/errors.hpp"
#include "spinlab/space_forms.hpp"

namespace spinlab {

using ad::D1;
using ad::D2;
using ad::D3;

/// Immersion u -> (p1(u), p2(u)) into the product chart. Positions are needed at
/// plain, first-, second- and third-order dual scalars.
class HypersurfaceChart {
 public:
  virtual ~HypersurfaceChart() = default;

  virtual std::string name() const = 0;
  virtual Vec4<double> position(const Vec3<double>& u) const = 0;
  virtual Vec4<D1> position(const Vec3<D1>& u) const = 0;
  virtual Vec4<D2> position(const Vec3<D2>& u) const = 0;
  virtual Vec4<D3> position(const Vec3<D3>& u) const = 0;

  /// Random parameter point inside the sampling region.
  virtual Eigen::Vector3d sample(std::mt19937_64& rng) const = 0;
  /// Sign applied to the generalized cross product d1 p x d2 p x d3 p to get the unit normal.
  virtual int orientation() const { return 1; }
};

/// Implements the virtual position overloads through Derived::map<S>.
template <typename Derived>
class ChartImpl : public HypersurfaceChart {
 public:
  Vec4<double> position(const Vec3<double>& u) const override { return self().map(u); }
  Vec4<D1> position(const Vec3<D1>& u) const override { return self().map(u); }
  Vec4<D2> position(const Vec3<D2>& u) const override { return self().map(u); }
  Vec4<D3> position(const Vec3<D3>& u) const override { return self().map(u); }

 private:
  const Derived& self() const { return static_cast<const Derived&>(*this); }
};

/// First-order quantities at a chart point. Vectors of P are in frame components
/// (eps1..eps4); vectors of M in coordinate components unless named *_frame.
template <typename S>
struct FirstOrder {
  Vec4<S> p;
  Eigen::Matrix<S, 4, 3> dp;     // coordinate Jacobian of the P chart
  Eigen::Matrix<S, 4, 3> T;      // frame components of d_k
  Mat3<S> g, ginv;
  Vec4<S> nu, xi, V;
  S h;
  Eigen::Matrix<S, 4, 3> frame;  // e1, e2, xi
  Mat3<S> frame_coords;          // coordinates of e1, e2, xi
  Mat3<S> f_coord, chi_coord;
  Vec3<S> V_coord;
  bool fallback = false;         // e1 built from d_2
};

/// J in frame components: J eps1 = eps2, J eps3 = eps4.
template <typename S>
Vec4<S> apply_J(const Vec4<S>& v) {
  return Vec4<S>(-v(1), v(0), -v(3), v(2));
}
template <typename S>
Vec4<S> apply_F(const Vec4<S>& v) {
  return Vec4<S>(v(0), v(1), -v(2), -v(3));
}

/// n_a = det(eps_a, a, b, c).
template <typename S>
Vec4<S> cross4(const Vec4<S>& a, const Vec4<S>& b, const Vec4<S>& c) {
  Vec4<S> n;
  for (int i = 0; i < 4; ++i) {
    int r[3], k = 0;
    for (int j = 0; j < 4; ++j)
      if (j != i) r[k++] = j;
    S minor = a(r[0]) * (b(r[1]) * c(r[2]) - b(r[2]) * c(r[1])) -
              a(r[1]) * (b(r[0]) * c(r[2]) - b(r[2]) * c(r[0])) +
              a(r[2]) * (b(r[0]) * c(r[1]) - b(r[1]) * c(r[0]));
    n(i) = (i % 2 == 0) ? minor : S(-minor);
  }
  return n;
}

/// Threshold below which the first frame candidate d_1 - (d_1, xi) xi is rejected.
inline constexpr double kFrameFallback = 1e-6;

template <typename S>
FirstOrder<S> first_order(const HypersurfaceChart& chart, const ProductModel& P, const Vec3<S>& u) {
  using std::sqrt;
  using J = ad::Dual<S, 3>;
  Vec4<J> pj = chart.position(ad::seed<S, 3>(u));
  FirstOrder<S> r;
  r.p = ad::val(pj);
  for (int k = 0; k < 3; ++k) r.dp.col(k) = ad::der(pj, k);
  if (!P.contains(ad::to_double(r.p)))
    throw DomainError("induced_data: point outside the factor chart domains");
  Vec4<S> sc = P.frame_scale(r.p);
  for (int k = 0; k < 3; ++k) r.T.col(k) = sc.cwiseProduct(r.dp.col(k));
  r.g = r.T.transpose() * r.T;

  Vec4<S> n = cross4<S>(r.T.col(0), r.T.col(1), r.T.col(2));
  S nn = sqrt(n.squaredNorm());
  double vol = ad::value_of(nn);
  double scale = ad::value_of(sqrt(r.T.col(0).squaredNorm() * r.T.col(1).squaredNorm() *
                                   r.T.col(2).squaredNorm()));
  if (!(vol > 1e-10 * scale)) throw DomainError("induced_data: differential is rank deficient");
  r.ginv = r.g.inverse();
  r.nu = n * (double(chart.orientation()) / nn);
  r.xi = -apply_J<S>(r.nu);

  Vec4<S> t = r.T.col(0) - r.T.col(0).dot(r.xi) * r.xi;
  S tn = sqrt(t.squaredNorm());
  if (ad::value_of(tn) < kFrameFallback) {
    r.fallback = true;
    t = r.T.col(1) - r.T.col(1).dot(r.xi) * r.xi;
    tn = sqrt(t.squaredNorm());
  }
  Vec4<S> e1 = t / tn;
  r.frame.col(0) = e1;
  r.frame.col(1) = apply_J<S>(e1);
  r.frame.col(2) = r.xi;

  Eigen::Matrix<S, 3, 4> proj = r.ginv * r.T.transpose();  // tangential part, in coordinates
  r.frame_coords = proj * r.frame;

  Vec4<S> Fnu = apply_F<S>(r.nu);
  r.h = Fnu.dot(r.nu);
  r.V = Fnu - r.h * r.nu;
  Eigen::Matrix<S, 4, 3> FT, JT;
  for (int k = 0; k < 3; ++k) {
    FT.col(k) = apply_F<S>(r.T.col(k));
    JT.col(k) = apply_J<S>(r.T.col(k));
  }
  r.f_coord = proj * FT;
  r.chi_coord = proj * JT;
  r.V_coord = proj * r.V;
  return r;
}

/// Value part (k < 0) or k-th partial derivative of every field.
template <typename S>
FirstOrder<S> component(const FirstOrder<ad::Dual<S, 3>>& x, int k) {
  auto c = [k](const auto& m) { return k < 0 ? ad::val(m) : ad::der(m, k); };
  FirstOrder<S> r;
  r.p = c(x.p);
  r.dp = c(x.dp);
  r.T = c(x.T);
  r.g = c(x.g);
  r.ginv = c(x.ginv);
  r.nu = c(x.nu);
  r.xi = c(x.xi);
  r.V = c(x.V);
  r.h = k < 0 ? x.h.v : x.h.d[k];
  r.frame = c(x.frame);
  r.frame_coords = c(x.frame_coords);
  r.f_coord = c(x.f_coord);
  r.chi_coord = c(x.chi_coord);
  r.V_coord = c(x.V_coord);
  r.fallback = x.fallback;
  return r;
}

/// First-order fields, their partial derivatives, the induced connection and the shape operator.
template <typename S>
struct SecondOrder {
  FirstOrder<S> fo;
  std::array<FirstOrder<S>, 3> d;
  std::array<Mat3<S>, 3> G;      // Christoffel matrices
  Eigen::Matrix<S, 4, 3> W;      // -nabla^P_{d_k} nu
  Mat3<S> E_coord;
  S H;
};

/// Optional modification of the shape operator, used to build corrupted data sets.
struct ShapeModifier {
  double scale = 1.0;
  Eigen::Matrix3d add_frame = Eigen::Matrix3d::Zero();  // added in the adapted frame
  bool active() const { return scale != 1.0 || add_frame.squaredNorm() > 0.0; }
};

template <typename S>
SecondOrder<S> second_order(const HypersurfaceChart& chart, const ProductModel& P,
                            const Vec3<S>& u, const ShapeModifier& mod = {}) {
  auto x = first_order<ad::Dual<S, 3>>(chart, P, ad::seed<S, 3>(u));
  SecondOrder<S> r;
  r.fo = component<S>(x, -1);
  for (int k = 0; k < 3; ++k) r.d[k] = component<S>(x, k);
  std::array<Mat3<S>, 3> dg;
  for (int k = 0; k < 3; ++k) dg[k] = r.d[k].g;
  r.G = christoffel<S>(r.fo.g, dg);
  for (int k = 0; k < 3; ++k) {
    Mat4<S> theta = P.frame_connection<S>(r.fo.p, r.fo.dp.col(k));
    r.W.col(k) = -(r.d[k].nu + theta * r.fo.nu);
  }
  r.E_coord = r.fo.ginv * r.fo.T.transpose() * r.W;
  if (mod.active()) {
    const Mat3<S>& Pm = r.fo.frame_coords;
    Mat3<S> Pinv = r.fo.frame.transpose() * r.fo.T;
    Mat3<S> add = mod.add_frame.template cast<S>();
    r.E_coord = r.E_coord * mod.scale + Pm * add * Pinv;
  }
  r.H = r.E_coord.trace() / 3.0;
  return r;
}

/// Everything the checks need at one point of M. Tensors on M are given in the
/// adapted frame (e1, e2 = Chi e1, xi) with columns holding images of basis vectors.
struct InducedPointData {
  Eigen::Vector3d u;
  Eigen::Vector4d p;
  Eigen::Matrix<double, 4, 3> dp, T;
  Eigen::Matrix3d g;
  Eigen::Vector4d nu, xi4, V4;
  Eigen::Matrix<double, 4, 3> frame;  // e1, e2, xi in P frame components
  Eigen::Matrix3d frame_coords;
  bool fallback = false;

  Eigen::Matrix3d E, f, chi;
  Eigen::Vector3d V;
  double h = 0.0, H = 0.0;
  double E_asymmetry = 0.0;  // raw |g(EX, Y) - g(X, EY)| before any use

  std::array<Eigen::Matrix3d, 3> nablaE;  // (nabla_{e_a} E)
  std::array<Eigen::Matrix3d, 3> nabla_f;
  std::array<Eigen::Vector3d, 3> nabla_V, nabla_xi;
  Eigen::Vector3d dh, dH;                   // dh(e_a), dH(e_a)
  RiemannTensor R;
  std::array<Eigen::Matrix3d, 3> connection;  // [a](i, k) = g(nabla_{e_a} e_i, e_k)
  std::array<Eigen::Matrix4d, 3> frame_derivative;  // [a](b, c) = <d_{e_a} f_b, f_c>, f = (e1, e2, xi, nu)
  std::array<Eigen::Vector4d, 3> velocity;          // P chart velocity along e_a

  /// g(d^nabla E(e_a, e_b), e_c)
  double codazzi_lhs(int a, int b, int c) const { return nablaE[a](c, b) - nablaE[b](c, a); }
  Eigen::Matrix4d adapted_basis() const;  // columns e1, e2, xi, nu in P frame components
};

InducedPointData induced_data(const HypersurfaceChart& chart, const ProductModel& product,
                              const Eigen::Vector3d& u, const ShapeModifier& mod = {});

/// Named scalar residuals.
struct Residual {
  std::string name;
  double value = 0.0;
};
using ResidualBundle = std::vector<Residual>;
double max_residual(const ResidualBundle& b);

ResidualBundle product_identity_residuals(const InducedPointData& d);
ResidualBundle induced_identity_residuals(const InducedPointData& d);
ResidualBundle verify_almost_contact(const InducedPointData& d);

/// |R(X,Y)Z - RHS| for frame indices, with (X ^ Y) Z = (Y, Z) X - (X, Z) Y.
double gauss_residual(const InducedPointData& d, const ProductModel& product, int x, int y, int z);
double gauss_residual_max(const InducedPointData& d, const ProductModel& product);
/// Right-hand side of the Gauss equation, as a frame vector.
Eigen::Vector3d gauss_rhs(const Eigen::Matrix3d& E, const Eigen::Matrix3d& f, double c1, double c2,
                          int x, int y, int z);
/// |g(d^nabla E(X,Y),Z) - RHS(X,Y,Z)|.
double codazzi_residual(const InducedPointData& d, const ProductModel& product, int x, int y, int z);
double codazzi_residual_max(const InducedPointData& d, const ProductModel& product);
double codazzi_rhs(const Eigen::Matrix3d& f, const Eigen::Vector3d& V, double c1, double c2, int x,
                   int y, int z);

ResidualBundle structure_equation_residuals(const InducedPointData& d);

struct Projections {
  Eigen::Vector4d pi1, pi2;
};
Projections projections(const Eigen::Vector4d& x);
ResidualBundle projection_residuals(const InducedPointData& d);

/// F = [[f, V], [V^T, h]] in the basis (e1, e2, xi, nu).
Eigen::Matrix4d product_structure_matrix(const Eigen::Matrix3d& f, const Eigen::Vector3d& V, double h);
struct RankResult {
  int rank_plus = 0, rank_minus = 0;
};
RankResult rank_check(const Eigen::Matrix4d& F, double threshold = 1e-8);
RankResult rank_check(const InducedPointData& d);

}  // namespace spinlab
