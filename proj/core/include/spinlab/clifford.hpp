#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace spinlab {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

/// Complex representation of Cl(m) for m in {2,3,4}, with e_i e_j + e_j e_i = -2 delta_ij.
///
/// Generator table:
///   m=2: e1 = i s1, e2 = i s2                (s_k Pauli matrices)
///   m=3: e_k = -i s_k                        (so e1 e2 e3 = -Id and omega = Id)
///   m=4: e_a = g_a (x) Id, e_{2+b} = w (x) g_b  with g, w the m=2 generators and volume
/// The complex volume element is omega = i^floor((m+1)/2) e1...em.
struct CliffordModel {
  int dim = 0;
  std::vector<CMat> generators;
  CMat volume;
  std::optional<std::pair<CMat, CMat>> chirality;  // (P+, P-) for even m

  int spinor_dim() const { return static_cast<int>(volume.rows()); }
  /// Clifford action of a real vector given in the generator basis.
  CMat act(const Eigen::VectorXd& x) const;
};

CliffordModel build_clifford(int m);

/// Clifford action of the Kähler form, (1/2) sum_j e_j . J e_j over the generator basis.
CMat kahler_action(const CliffordModel& model, const Eigen::MatrixXd& J);

/// psi1 (x) psi2 packed with index 2*i + k.
CVec tensor(const CVec& a, const CVec& b);
CMat kron(const CMat& a, const CMat& b);

/// (X1 + X2).(psi1 (x) psi2) = X1.psi1 (x) psi2 + conj(psi1) (x) X2.psi2 on a product of surfaces.
CVec product_clifford(const Eigen::VectorXd& x1, const Eigen::VectorXd& x2, const CVec& psi1,
                      const CVec& psi2);

/// psi+ - psi- for the chirality splitting of an even-dimensional model.
CVec conjugate(const CVec& psi, const CliffordModel& model);

/// Max norm of [E e_i, E e_j] minus the closed-form commutator in the a_ij, over all pairs.
double commutator_residual(const Eigen::Matrix3d& E, const CliffordModel& model);

/// Hermitian product, complex linear in the first slot.
inline cplx herm(const CVec& a, const CVec& b) { return b.dot(a); }

}  // namespace spinlab
