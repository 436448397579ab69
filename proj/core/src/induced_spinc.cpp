#include "spinlab/induced_spinc.hpp"

#include <algorithm>

namespace spinlab {

namespace {

const cplx I{0.0, 1.0};

CMat gamma_of(const std::array<CMat, 3>& gamma, const Eigen::Vector3d& x) {
  return x(0) * gamma[0] + x(1) * gamma[1] + x(2) * gamma[2];
}

}  // namespace

CMat ambient_action(const Eigen::Vector4d& v) { return ambient_clifford().act(v); }

CMat InducedSpinc::clifford(const Eigen::Vector3d& x) const { return gamma_of(gamma, x); }

Eigen::Matrix2cd InducedSpinc::gamma_restricted(int a) const {
  return basis.adjoint() * gamma[a] * basis;
}

InducedSpinc restrict_structure(const ProductModel& product, const InducedPointData& d, Structure s) {
  const CliffordModel& cl = ambient_clifford();
  InducedSpinc sp;
  sp.product = product;
  sp.structure = s;
  sp.j = s == Structure::S1 ? 1 : 2;
  sp.psi = parallel_spinor_field(product, s).psi;
  sp.chirality = herm(cl.volume * sp.psi, sp.psi).real() > 0 ? 1 : -1;

  const CMat& proj = sp.chirality > 0 ? cl.chirality->first : cl.chirality->second;
  sp.basis = CMat(4, 2);
  for (int c = 0, k = 0; c < 4 && k < 2; ++c)
    if (proj.col(c).norm() > 0.5) sp.basis.col(k++) = proj.col(c) / proj.col(c).norm();

  const Eigen::Matrix4d B = d.adapted_basis();
  std::array<CMat, 4> Ef;
  for (int b = 0; b < 4; ++b) Ef[b] = ambient_action(B.col(b));
  for (int a = 0; a < 3; ++a) sp.gamma[a] = double(sp.chirality) * Ef[a] * Ef[3];

  // Spin connection of M (Levi-Civita of g) written with the frame-dependent Clifford
  // matrices, minus the change-of-frame term, plus the auxiliary potential pulled back to M.
  const CMat id = CMat::Identity(4, 4);
  for (int a = 0; a < 3; ++a) {
    CMat T = CMat::Zero(4, 4), D = CMat::Zero(4, 4);
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) T += d.connection[a](i, k) * Ef[i] * Ef[k];
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) D += d.frame_derivative[a](b, c) * Ef[b] * Ef[c];
    double A = product.aux_potential<double>(s, d.p, d.velocity[a]);
    sp.connection[a] = 0.25 * T - 0.25 * D + (0.5 * A) * I * id;
  }

  sp.OmegaN = B.transpose() * product.omega_frame(s) * B;
  sp.Omega = sp.OmegaN.topLeftCorner<3, 3>();

  Eigen::Matrix2cd vol = sp.basis.adjoint() * sp.gamma[0] * sp.gamma[1] * sp.gamma[2] * sp.basis;
  sp.volume_sign = vol.trace().real() / 2.0;
  return sp;
}

InducedSpinc with_flipped_orientation(InducedSpinc spinc) {
  for (auto& g : spinc.gamma) g = -g;
  return spinc;
}

double killing_residual(const InducedSpinc& sp, const InducedPointData& d, int a) {
  const double sign = sp.j == 1 ? -1.0 : 1.0;
  CVec lhs = sp.connection[a] * sp.psi;
  CVec rhs = 0.5 * sign * (sp.clifford(d.E.col(a)) * sp.psi);
  return (lhs - rhs).norm() / sp.psi.norm();
}

double killing_residual_max(const InducedSpinc& sp, const InducedPointData& d) {
  double m = 0.0;
  for (int a = 0; a < 3; ++a) m = std::max(m, killing_residual(sp, d, a));
  return m;
}

ResidualBundle clifford_relations(const InducedSpinc& sp) {
  double anti = 0.0, skew = 0.0;
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  for (int a = 0; a < 3; ++a) {
    Eigen::Matrix2cd ga = sp.gamma_restricted(a);
    skew = std::max(skew, (ga + ga.adjoint()).norm());
    for (int b = 0; b < 3; ++b) {
      Eigen::Matrix2cd gb = sp.gamma_restricted(b);
      anti = std::max(anti, (ga * gb + gb * ga + 2.0 * (a == b ? 1.0 : 0.0) * id).norm());
    }
  }
  Eigen::Matrix2cd vol = sp.gamma_restricted(0) * sp.gamma_restricted(1) * sp.gamma_restricted(2);
  // the restriction must also preserve the spinor subspace
  double leak = 0.0;
  for (int a = 0; a < 3; ++a) {
    CMat g = sp.gamma[a] * sp.basis;
    leak = std::max(leak, (g - sp.basis * (sp.basis.adjoint() * g)).norm());
  }
  return {{"anticommutation", anti},
          {"skew_adjoint", skew},
          {"volume_scalar", (vol - sp.volume_sign * id).norm()},
          {"invariant_subspace", leak}};
}

double algebraic_condition(const InducedSpinc& sp, const InducedPointData& d) {
  const CVec& phi = sp.psi;
  const Eigen::Vector3d xi = Eigen::Vector3d::UnitZ();
  CVec r;
  if (sp.j == 1)
    r = sp.clifford(xi) * phi + I * phi;
  else
    r = sp.clifford(d.V) * phi + I * (sp.clifford(xi) * phi) - d.h * phi;
  return r.norm() / phi.norm();
}

ResidualBundle spinor_identities(const InducedSpinc& sp, const InducedPointData& d) {
  const CVec& phi = sp.psi;
  const double n2 = phi.squaredNorm();
  auto pair = [&](const Eigen::Vector3d& x) { return herm(sp.clifford(x) * phi, phi) / n2; };
  const Eigen::Vector3d e1 = Eigen::Vector3d::UnitX(), e2 = Eigen::Vector3d::UnitY(),
                        xi = Eigen::Vector3d::UnitZ();
  return {{"V_phi_orthogonal", std::abs(pair(d.V))},
          {"V1_from_phi", std::abs(d.V(0) - (-I * pair(e2)))},
          {"V2_from_phi", std::abs(d.V(1) - I * pair(e1))},
          {"h_from_phi", std::abs(d.h - I * pair(xi))}};
}

Eigen::Matrix3d omega_closed_form(int j, double c1, double c2, double h, const Eigen::Vector3d& V) {
  const double s = j == 1 ? 1.0 : -1.0;
  Eigen::Matrix3d w = Eigen::Matrix3d::Zero();
  w(0, 1) = 0.5 * s * c1 * (h - 1.0) - 0.5 * c2 * (h + 1.0);
  w(0, 2) = 0.5 * (s * c1 - c2) * V(0);
  w(1, 2) = 0.5 * (s * c1 - c2) * V(1);
  return w - w.transpose();
}

double omega_formula_check(const InducedSpinc& sp, const InducedPointData& d) {
  Eigen::Matrix3d expected = omega_closed_form(sp.j, sp.product.m1.c, sp.product.m2.c, d.h, d.V);
  return (sp.Omega - expected).cwiseAbs().maxCoeff();
}

double restriction_relation_residual(const InducedSpinc& sp) {
  const auto& e = ambient_clifford().generators;
  const Eigen::Matrix4d W = sp.product.omega_frame(sp.structure);
  CVec lhs = CVec::Zero(4);
  for (int c = 0; c < 4; ++c)
    for (int k = c + 1; k < 4; ++k) lhs += W(c, k) * (e[c] * (e[k] * sp.psi));
  CVec gOmega = CVec::Zero(4);
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) gOmega += sp.Omega(a, b) * (sp.gamma[a] * (sp.gamma[b] * sp.psi));
  Eigen::Vector3d nu_omega = sp.OmegaN.block<1, 3>(3, 0).transpose();
  CVec gnu = sp.clifford(nu_omega) * sp.psi;
  return (lhs - gOmega + double(sp.chirality) * gnu).norm() / sp.psi.norm();
}

ProjectionSpinorResult projection_spinor_check(const InducedPointData& d) {
  static const CliffordModel s = build_clifford(2);
  auto p1 = [](const Eigen::Vector4d& x) { return Eigen::Vector2d(x(0), x(1)); };
  auto p2 = [](const Eigen::Vector4d& x) { return Eigen::Vector2d(x(2), x(3)); };
  auto act = [](const Eigen::Vector2d& re, const Eigen::Vector2d& im) -> CMat {
    return s.act(re) + I * s.act(im);
  };
  CVec plus(2), minus(2);
  plus << 1, 0;
  minus << 0, 1;
  const Eigen::Vector4d &nu = d.nu, &xi = d.xi4, &V = d.V4;

  CVec first = -tensor(s.act(p1(nu)) * plus, s.act(p2(xi)) * plus) +
               tensor(s.act(p1(xi)) * plus, s.act(p2(nu)) * plus);
  CVec second = tensor(s.act(p1(nu)) * minus, act(p2(V), p2(xi)) * plus) -
                tensor(act(p1(V), p1(xi)) * minus, s.act(p2(nu)) * plus);
  return {first.norm(), second.norm()};
}

DiracResult dirac_and_energy_momentum(const InducedSpinc& sp, const InducedPointData& d) {
  const CVec& phi = sp.psi;
  const double n2 = phi.squaredNorm();
  if (n2 < 1e-24) throw DomainError("dirac_and_energy_momentum: degenerate spinor field");
  std::array<CVec, 3> nabla;
  for (int a = 0; a < 3; ++a) nabla[a] = sp.connection[a] * phi;
  CVec D = CVec::Zero(4);
  for (int a = 0; a < 3; ++a) D += sp.gamma[a] * nabla[a];
  const double sign = sp.j == 1 ? 1.0 : -1.0;
  DiracResult r;
  r.dirac_residual = (D - sign * 1.5 * d.H * phi).norm() / std::sqrt(n2);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      r.Q(a, b) = 0.5 * herm(sp.gamma[a] * nabla[b] + sp.gamma[b] * nabla[a], phi).real() / n2;
  return r;
}

}  // namespace spinlab
