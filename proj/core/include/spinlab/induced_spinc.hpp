#pragma once

#include <array>

#include "spinlab/clifford.hpp"
#include "spinlab/hypersurface.hpp"
#include "spinlab/space_forms.hpp"

namespace spinlab {

/// Restriction of the spin^c structure S_j of P to M at one point.
///
/// The restricted spinor space is the chirality eigenspace of the ambient spinors that
/// contains the parallel spinor (Sigma^+ for j = 1, Sigma^- for j = 2), and
///   gamma_j(X) phi = +/- (X . nu . psi)
/// with + on Sigma^+ and - on Sigma^-. Everything is expressed in the trivialization
/// attached to the product frame (eps1..eps4), in which psi has constant components.
struct InducedSpinc {
  int j = 1;
  ProductModel product;
  Structure structure = Structure::S1;
  int chirality = 1;                  // +1 or -1
  CVec psi;                           // ambient parallel spinor; phi_j has the same components
  Eigen::MatrixXcd basis;             // 4 x 2 orthonormal basis of the restricted spinor space
  std::array<CMat, 3> gamma;          // gamma_j(e_a), 4 x 4
  std::array<CMat, 3> connection;     // nabla^j_{e_a} phi = d_{e_a} phi + connection[a] phi
  Eigen::Matrix3d Omega;              // Omega_j(e_a, e_b), pulled back from Omega^N
  Eigen::Matrix4d OmegaN;             // Omega^N in the basis (e1, e2, xi, nu)
  double volume_sign = 0.0;           // s with gamma(e1) gamma(e2) gamma(xi) = s Id on the restricted space

  /// Clifford action of a tangent vector with frame components x.
  CMat clifford(const Eigen::Vector3d& x) const;
  /// 2 x 2 matrix of gamma_j(e_a) in the restricted basis.
  Eigen::Matrix2cd gamma_restricted(int a) const;
};

/// Ambient Clifford action of a vector with P frame components v.
CMat ambient_action(const Eigen::Vector4d& v);

InducedSpinc restrict_structure(const ProductModel& product, const InducedPointData& d, Structure s);

/// Optional corruption of the Clifford data: flips gamma_j -> -gamma_j (orientation reversal of
/// the normal in the restriction rule), used as a negative control.
InducedSpinc with_flipped_orientation(InducedSpinc spinc);

/// |nabla^j_X phi - (-1)^j (1/2) gamma_j(EX) phi| / |phi| for X = e_a.
double killing_residual(const InducedSpinc& sp, const InducedPointData& d, int a);
double killing_residual_max(const InducedSpinc& sp, const InducedPointData& d);

/// Clifford relations of gamma_j: anticommutation and skew-adjointness.
ResidualBundle clifford_relations(const InducedSpinc& sp);

/// j=1: gamma(xi) phi + i phi; j=2: gamma(V) phi + i gamma(xi) phi - h phi.
double algebraic_condition(const InducedSpinc& sp, const InducedPointData& d);

/// The four scalar identities relating V, h and phi_2 (inner products normalized by |phi|^2).
ResidualBundle spinor_identities(const InducedSpinc& sp2, const InducedPointData& d);

/// Closed form of Omega_j in the adapted frame.
Eigen::Matrix3d omega_closed_form(int j, double c1, double c2, double h, const Eigen::Vector3d& V);
double omega_formula_check(const InducedSpinc& sp, const InducedPointData& d);

/// |Omega^N . psi - gamma(Omega) phi -/+ gamma(nu _| Omega^N) phi| with the chirality sign.
double restriction_relation_residual(const InducedSpinc& sp);

/// Norms of the two spinor combinations built from factor projections (structures 1 and 2).
struct ProjectionSpinorResult {
  double first = 0.0, second = 0.0;
};
ProjectionSpinorResult projection_spinor_check(const InducedPointData& d);

struct DiracResult {
  double dirac_residual = 0.0;   // |D phi -/+ (3/2) H phi| / |phi|
  Eigen::Matrix3d Q;              // energy-momentum tensor in the frame
};
DiracResult dirac_and_energy_momentum(const InducedSpinc& sp, const InducedPointData& d);

}  // namespace spinlab
