#include "spinlab/clifford.hpp"

#include "spinlab/errors.hpp"

namespace spinlab {

namespace {

const cplx I{0.0, 1.0};

CMat pauli(int k) {
  CMat s(2, 2);
  switch (k) {
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -I, I, 0; break;
    default: s << 1, 0, 0, -1; break;
  }
  return s;
}

cplx ipow(int n) {
  static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[((n % 4) + 4) % 4];
}

}  // namespace

CMat kron(const CMat& a, const CMat& b) {
  CMat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

CVec tensor(const CVec& a, const CVec& b) {
  CVec r(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) r.segment(i * b.size(), b.size()) = a(i) * b;
  return r;
}

CMat CliffordModel::act(const Eigen::VectorXd& x) const {
  if (x.size() != dim) throw DimensionError("Clifford action: vector has wrong dimension");
  CMat r = CMat::Zero(spinor_dim(), spinor_dim());
  for (int i = 0; i < dim; ++i) r += x(i) * generators[i];
  return r;
}

CliffordModel build_clifford(int m) {
  CliffordModel c;
  c.dim = m;
  switch (m) {
    case 2:
      c.generators = {I * pauli(1), I * pauli(2)};
      break;
    case 3:
      c.generators = {-I * pauli(1), -I * pauli(2), -I * pauli(3)};
      break;
    case 4: {
      CliffordModel s = build_clifford(2);
      CMat id = CMat::Identity(2, 2);
      c.generators = {kron(s.generators[0], id), kron(s.generators[1], id),
                      kron(s.volume, s.generators[0]), kron(s.volume, s.generators[1])};
      break;
    }
    default:
      throw DimensionError("build_clifford: unsupported dimension " + std::to_string(m));
  }
  CMat prod = CMat::Identity(c.generators[0].rows(), c.generators[0].cols());
  for (const auto& e : c.generators) prod = prod * e;
  c.volume = ipow((m + 1) / 2) * prod;
  if (m % 2 == 0) {
    CMat id = CMat::Identity(c.volume.rows(), c.volume.cols());
    c.chirality = std::make_pair(CMat(0.5 * (id + c.volume)), CMat(0.5 * (id - c.volume)));
  }
  return c;
}

CMat kahler_action(const CliffordModel& model, const Eigen::MatrixXd& J) {
  if (model.dim % 2 != 0) throw DimensionError("kahler_action: odd dimension");
  const int m = model.dim;
  if (J.rows() != m || J.cols() != m) throw DimensionError("kahler_action: J has wrong size");
  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(m, m);
  if ((J * J + id).norm() > 1e-12 || (J.transpose() * J - id).norm() > 1e-12)
    throw DomainError("kahler_action: J is not an orthogonal complex structure");
  CMat r = CMat::Zero(model.spinor_dim(), model.spinor_dim());
  for (int j = 0; j < m; ++j) r += model.generators[j] * model.act(J.col(j));
  return 0.5 * r;
}

CVec conjugate(const CVec& psi, const CliffordModel& model) {
  if (!model.chirality) throw DimensionError("conjugate: odd dimension");
  if (psi.size() != model.spinor_dim()) throw DimensionError("conjugate: spinor has wrong size");
  return model.chirality->first * psi - model.chirality->second * psi;
}

CVec product_clifford(const Eigen::VectorXd& x1, const Eigen::VectorXd& x2, const CVec& psi1,
                      const CVec& psi2) {
  static const CliffordModel s = build_clifford(2);
  if (x1.size() != 2 || x2.size() != 2 || psi1.size() != 2 || psi2.size() != 2)
    throw DimensionError("product_clifford: factors must be surfaces with 2-component spinors");
  return tensor(s.act(x1) * psi1, psi2) + tensor(conjugate(psi1, s), s.act(x2) * psi2);
}

double commutator_residual(const Eigen::Matrix3d& E, const CliffordModel& model) {
  if (model.dim != 3) throw DimensionError("commutator_residual: needs the dimension 3 model");
  if ((E - E.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw DomainError("commutator_residual: E is not symmetric");
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      // a_ij = g(E e_i, e_j); E e_i has components given by row i.
      Eigen::Vector3d ai = E.row(i).transpose(), aj = E.row(j).transpose();
      CMat lhs = model.act(ai) * model.act(aj) - model.act(aj) * model.act(ai);
      Eigen::Vector3d w(aj(2) * ai(1) - aj(1) * ai(2), ai(2) * aj(0) - ai(0) * aj(2),
                        ai(0) * aj(1) - ai(1) * aj(0));
      CMat rhs = 2.0 * model.act(w);
      worst = std::max(worst, (lhs - rhs).norm());
    }
  }
  return worst;
}

}  // namespace spinlab
