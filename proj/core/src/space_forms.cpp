#include "spinlab/space_forms.hpp"

#include <array>

#include "spinlab/errors.hpp"

namespace spinlab {

namespace {

const cplx I{0.0, 1.0};

// 5-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 5> kNodes = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                          0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kWeights = {0.2369268850561891, 0.4786286704993665,
                                            0.5688888888888889, 0.4786286704993665,
                                            0.2369268850561891};

// Circulation of A around the square of side delta centred at p in the (a, b) coordinate plane.
double loop_integral(const ProductModel& product, Structure s, const Eigen::Vector4d& p, int a,
                     int b, double delta) {
  const double h = 0.5 * delta;
  Eigen::Vector4d ea = Eigen::Vector4d::Unit(a), eb = Eigen::Vector4d::Unit(b);
  // corners in counter-clockwise order in the (a, b) plane
  const std::array<Eigen::Vector4d, 4> corners = {p - h * ea - h * eb, p + h * ea - h * eb,
                                                  p + h * ea + h * eb, p - h * ea + h * eb};
  double total = 0.0;
  for (int k = 0; k < 4; ++k) {
    const Eigen::Vector4d& q0 = corners[k];
    const Eigen::Vector4d& q1 = corners[(k + 1) % 4];
    Eigen::Vector4d mid = 0.5 * (q0 + q1), half = 0.5 * (q1 - q0);
    for (int n = 0; n < 5; ++n) {
      Eigen::Vector4d q = mid + kNodes[n] * half;
      total += kWeights[n] * product.aux_potential(s, q, half);
    }
  }
  return total;
}

}  // namespace

Christoffels SurfaceModel::christoffels(const Eigen::Vector2d& u) const {
  if (!contains(u)) throw DomainError("christoffels: point outside the chart domain");
  Eigen::Vector2d d = dlog_lambda(u(0), u(1));
  Christoffels r;
  // Gamma^k_ij = delta_ik d_j + delta_jk d_i - delta_ij d_k for a conformally flat metric.
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        r.gamma[k](i, j) = (i == k ? d(j) : 0.0) + (j == k ? d(i) : 0.0) - (i == j ? d(k) : 0.0);
  return r;
}

double SurfaceModel::ricci_form(const Eigen::Vector2d& u, const Eigen::Vector2d& x,
                                const Eigen::Vector2d& y) const {
  if (!contains(u)) throw DomainError("ricci_form: point outside the chart domain");
  double l = lambda(u(0), u(1));
  return c * l * l * (x(0) * y(1) - x(1) * y(0));
}

Eigen::Matrix4d ProductModel::F() { return Eigen::Vector4d(1, 1, -1, -1).asDiagonal(); }

Eigen::Matrix4d ProductModel::J() {
  Eigen::Matrix4d j = Eigen::Matrix4d::Zero();
  j(1, 0) = 1;
  j(0, 1) = -1;
  j(3, 2) = 1;
  j(2, 3) = -1;
  return j;
}

Eigen::Matrix4d ProductModel::omega_frame(Structure s) const {
  auto sg = factor_signs(s);
  // Omega^N = -s1 rho1 - s2 rho2 with rho_i(eps, J eps) = c_i.
  Eigen::Matrix4d w = Eigen::Matrix4d::Zero();
  w(0, 1) = -sg[0] * m1.c;
  w(1, 0) = -w(0, 1);
  w(2, 3) = -sg[1] * m2.c;
  w(3, 2) = -w(2, 3);
  return w;
}

double ProductModel::curvature_form_Omega_N(Structure s, const TangentVector& x,
                                            const TangentVector& y) const {
  if ((x.base - y.base).norm() > 1e-12)
    throw DomainError("curvature_form_Omega_N: tangent vectors at different base points");
  if (!contains(x.base)) throw DomainError("curvature_form_Omega_N: point outside the chart");
  Eigen::Vector4d sc = frame_scale<double>(x.base);
  Eigen::Vector4d fx = sc.cwiseProduct(x.coords), fy = sc.cwiseProduct(y.coords);
  return fx.dot(omega_frame(s) * fy);
}

const CliffordModel& ambient_clifford() {
  static const CliffordModel model = build_clifford(4);
  return model;
}

CMat ParallelSpinorField::connection(const Eigen::Vector4d& p, const Eigen::Vector4d& dp) const {
  const auto& e = ambient_clifford().generators;
  auto th = product.connection_forms<double>(p, dp);
  double a = product.aux_potential<double>(structure, p, dp);
  CMat id = CMat::Identity(4, 4);
  return 0.5 * th[0] * e[0] * e[1] + 0.5 * th[1] * e[2] * e[3] + (0.5 * a) * I * id;
}

ParallelSpinorField parallel_spinor_field(const ProductModel& product, Structure s) {
  // Sigma^+ of a surface is (1, 0), Sigma^- is (0, 1); a canonical factor contributes Sigma^+.
  auto sg = product.factor_signs(s);
  CVec plus(2), minus(2);
  plus << 1, 0;
  minus << 0, 1;
  ParallelSpinorField f;
  f.product = product;
  f.structure = s;
  f.psi = tensor(sg[0] > 0 ? plus : minus, sg[1] > 0 ? plus : minus);
  return f;
}

double auxiliary_curvature_consistency(const ProductModel& product, Structure s,
                                       const std::vector<Eigen::Vector4d>& points) {
  double worst = 0.0;
  const Eigen::Matrix4d w = product.omega_frame(s);
  for (const auto& p : points) {
    if (!product.contains(p)) throw DomainError("auxiliary_curvature_consistency: point outside chart");
    Eigen::Vector4d sc = product.frame_scale<double>(p);
    double delta = 1e-2;
    double r1 = product.m1.chart_radius() - p.head<2>().norm();
    double r2 = product.m2.chart_radius() - p.tail<2>().norm();
    delta = std::min(delta, 0.1 * std::min(r1, r2));
    for (int a = 0; a < 4; ++a) {
      for (int b = a + 1; b < 4; ++b) {
        double f1 = loop_integral(product, s, p, a, b, delta) / (delta * delta);
        double f2 = loop_integral(product, s, p, a, b, 0.5 * delta) / (0.25 * delta * delta);
        double holonomy = (4.0 * f2 - f1) / 3.0;
        double expected = sc(a) * sc(b) * w(a, b);
        worst = std::max(worst, std::abs(holonomy - expected));
      }
    }
  }
  return worst;
}

}  // namespace spinlab
