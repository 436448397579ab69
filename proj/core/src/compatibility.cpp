#include "spinlab/compatibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "spinlab/checks.hpp"

namespace spinlab {

double nabla_xi_residual(const InducedPointData& d) {
  double m = 0.0;
  for (int a = 0; a < 3; ++a) m = std::max(m, (d.nabla_xi[a] - d.chi * d.E.col(a)).norm());
  return m;
}

// ---------------------------------------------------------------------------
// Systems

double SystemResiduals::max() const {
  double m = 0.0;
  for (const auto& r : residuals) m = std::max(m, std::abs(r.value));
  return m;
}

const std::array<std::string, 12>& system_equation_names(int tag) {
  static const std::array<std::string, 12> names = {
      "e1.1 R1221+R1331", "e1.2 R1332",       "e1.3 R1223", "e1.4 V1-balance",
      "e2.1 R2331",       "e2.2 R2332+R2112", "e2.3 R2113", "e2.4 V2-balance",
      "e3.1 R3221",       "e3.2 R3112",       "e3.3 R3113+R3223", "e3.4 trace-balance"};
  if (tag != 1 && tag != 2) throw DimensionError("system tag must be 1 or 2");
  return names;
}

Eigen::Vector3d system_quadratic_terms(const Eigen::Matrix3d& E, int x) {
  auto a = [&](int i, int j) { return 0.5 * (E(i - 1, j - 1) + E(j - 1, i - 1)); };
  const double a11 = a(1, 1), a22 = a(2, 2), a33 = a(3, 3), a12 = a(1, 2), a13 = a(1, 3), a23 = a(2, 3);
  switch (x) {
    case 0:
      return {a11 * a22 + a11 * a33 - a12 * a12 - a13 * a13, a12 * a33 - a13 * a23, a13 * a22 - a12 * a23};
    case 1:
      return {a12 * a33 - a13 * a23, a22 * a33 + a11 * a22 - a23 * a23 - a12 * a12, a11 * a23 - a12 * a13};
    case 2:
      return {a22 * a13 - a12 * a23, a11 * a23 - a12 * a13, a11 * a33 + a22 * a33 - a13 * a13 - a23 * a23};
  }
  throw DimensionError("system_quadratic_terms: index out of range");
}

namespace {

// Ricci components as they appear in the displayed equations: sum of R(x,k,k,m) over
// the k distinct from x and m.
double ricci_terms(const RiemannTensor& R, int x, int m) {
  double s = 0.0;
  for (int k = 0; k < 3; ++k)
    if (k != x && k != m) s += R(x, k, k, m);
  return s;
}

int levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

}  // namespace

SystemResiduals system_residuals(int tag, const InducedPointData& d, const Eigen::Matrix3d& Omega) {
  const auto& names = system_equation_names(tag);
  // For phi_1 the spinor frame pairs gamma_1(e_k) phi_1 with xi, for phi_2 with (V_2, -V_1, h);
  // the d^nabla E terms enter with opposite signs.
  const double s = tag == 1 ? -1.0 : 1.0;
  const Eigen::Vector3d N = tag == 1 ? Eigen::Vector3d(0, 0, 1) : Eigen::Vector3d(d.V(1), -d.V(0), d.h);

  SystemResiduals out;
  out.tag = tag;
  for (int x = 0; x < 3; ++x) {
    const Eigen::Vector3d w = Omega.row(x).transpose();  // X _| Omega
    const Eigen::Vector3d q = system_quadratic_terms(d.E, x);
    const Eigen::Vector3d wN = w.cross(N);
    for (int m = 0; m < 3; ++m) {
      double c = 0.0;
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          if (int e = levi_civita(k, l, m)) c += e * d.codazzi_lhs(k, x, l);
      double r = ricci_terms(d.R, x, m) - q(m) + wN(m) - s * c;
      out.residuals.push_back({names[4 * x + m], r});
    }
    double trace = 0.0;
    for (int k = 0; k < 3; ++k) trace += d.codazzi_lhs(k, x, k);
    out.residuals.push_back({names[4 * x + 3], -w.dot(N) + s * trace});
  }
  return out;
}

SystemResiduals system_residuals(int tag, const InducedPointData& d, const ProductModel& product) {
  return system_residuals(tag, d, omega_closed_form(tag, product.m1.c, product.m2.c, d.h, d.V));
}

// ---------------------------------------------------------------------------
// Gauss <=> Codazzi

EquivalencePoint equivalence_point(int tag, const InducedPointData& d, const ProductModel& product,
                                   const Eigen::Matrix3d& Omega) {
  EquivalencePoint p;
  p.system = system_residuals(tag, d, Omega).max();
  p.gauss = gauss_residual_max(d, product);
  p.codazzi = codazzi_residual_max(d, product);
  p.hypothesis = (Omega - omega_closed_form(tag, product.m1.c, product.m2.c, d.h, d.V)).cwiseAbs().maxCoeff();
  return p;
}

EquivalenceVerdict gauss_iff_codazzi(int tag, const std::vector<EquivalencePoint>& ensemble, double tol,
                                     double hypothesis_tol) {
  EquivalenceVerdict v;
  v.tag = tag;
  for (size_t i = 0; i < ensemble.size(); ++i) {
    const auto& p = ensemble[i];
    ++v.points;
    if (!(p.hypothesis < hypothesis_tol)) {
      ++v.skipped;
      continue;
    }
    v.max_gauss = std::max(v.max_gauss, p.gauss);
    v.max_codazzi = std::max(v.max_codazzi, p.codazzi);
    v.max_system = std::max(v.max_system, p.system);
    const bool sys = p.system < tol, gauss = p.gauss < tol, codazzi = p.codazzi < tol;
    if (gauss == codazzi) ++v.covanishing;
    bool bad = false;
    if (sys && gauss) {
      ++v.forward_tested;
      v.max_implied = std::max(v.max_implied, p.codazzi);
      if (codazzi) ++v.forward_confirmed;
      else bad = true;
    }
    if (sys && codazzi) {
      ++v.backward_tested;
      v.max_implied = std::max(v.max_implied, p.gauss);
      if (gauss) ++v.backward_confirmed;
      else bad = true;
    }
    if (bad) v.counterexamples.push_back(static_cast<int>(i));
  }
  return v;
}

ShapeModifier rank_one_perturbation(std::mt19937_64& rng, double amount) {
  std::normal_distribution<double> N(0.0, 1.0);
  Eigen::Vector3d w(N(rng), N(rng), N(rng));
  w.normalize();
  ShapeModifier m;
  m.add_frame = amount * w * w.transpose();
  return m;
}

// ---------------------------------------------------------------------------
// Forward direction

ForwardPoint forward_point(const InducedPointData& d, const InducedSpinc& sp1, const InducedSpinc& sp2) {
  ForwardPoint f;
  int i = 0;
  for (const InducedSpinc* sp : {&sp1, &sp2}) {
    f.killing[i] = killing_residual_max(*sp, d);
    f.algebraic[i] = algebraic_condition(*sp, d);
    f.omega[i] = omega_formula_check(*sp, d);
    f.omega_size = std::max(f.omega_size, sp->Omega.cwiseAbs().maxCoeff());
    ++i;
  }
  return f;
}

ResidualReport theorem_forward_check(const HypersurfaceChart& chart, const ProductModel& product,
                                     const std::vector<Eigen::Vector3d>& points,
                                     const std::map<std::string, double>& tolerances,
                                     bool flip_orientation) {
  CheckRecord kill = make_record("forward.killing", tolerances);
  CheckRecord alg = make_record("forward.algebraic", tolerances);
  CheckRecord om = make_record("forward.omega", tolerances);

  for (const auto& u : points) {
    InducedPointData d;
    try {
      d = induced_data(chart, product, u);
    } catch (const DomainError& e) {
      for (auto* r : {&kill, &alg, &om}) r->skip(e.what());
      continue;
    }
    InducedSpinc sp1 = restrict_structure(product, d, Structure::S1);
    InducedSpinc sp2 = restrict_structure(product, d, Structure::S2);
    if (flip_orientation) {
      sp1 = with_flipped_orientation(sp1);
      sp2 = with_flipped_orientation(sp2);
    }
    const ForwardPoint f = forward_point(d, sp1, sp2);
    for (int j = 0; j < 2; ++j) {
      const std::string key = j == 0 ? "j1" : "j2";
      kill.metric_max(key, f.killing[j]);
      alg.metric_max(key, f.algebraic[j]);
      om.metric_max(key, f.omega[j]);
    }
    om.metric_max("max_abs_omega", f.omega_size);
    kill.add(std::max(f.killing[0], f.killing[1]));
    alg.add(std::max(f.algebraic[0], f.algebraic[1]));
    om.add(std::max(f.omega[0], f.omega[1]));
  }
  if (product.m1.c == 0.0 && product.m2.c == 0.0) om.notes.push_back(kSpinCaseNote);
  ResidualReport rep;
  for (auto* r : {&kill, &alg, &om}) {
    r->finalize();
    rep.checks.push_back(*r);
  }
  rep.finalize();
  return rep;
}

// ---------------------------------------------------------------------------
// Converse direction

const char* corruption_name(Corruption::Field f) {
  switch (f) {
    case Corruption::Field::None: return "none";
    case Corruption::Field::E: return "E";
    case Corruption::Field::H: return "h";
    case Corruption::Field::V: return "V";
    case Corruption::Field::F: return "f";
  }
  return "?";
}

std::string corrupted_check(Corruption::Field f) {
  switch (f) {
    case Corruption::Field::E: return "converse.gauss";
    case Corruption::Field::H: return "converse.h_V_norm";
    case Corruption::Field::V: return "converse.nabla_V";
    case Corruption::Field::F: return "converse.f_recipe";
    case Corruption::Field::None: break;
  }
  return "";
}

template <typename S>
CompatibilityFields<S> HarvestedData::harvest(const Vec3<S>& u) const {
  using std::cos;
  using std::sin;
  ShapeModifier mod;
  if (corruption_.field == Corruption::Field::E) mod.scale = corruption_.amount;
  SecondOrder<S> s = second_order<S>(chart_, product_, u, mod);
  CompatibilityFields<S> F;
  F.E = s.E_coord;
  F.chi = s.fo.chi_coord;
  F.f = s.fo.f_coord;
  F.xi = s.fo.frame_coords.col(2);
  F.V = s.fo.V_coord;
  F.h = s.fo.h;
  const double t = corruption_.amount;
  switch (corruption_.field) {
    case Corruption::Field::H: F.h = F.h + t; break;
    case Corruption::Field::V: F.V = Vec3<S>(cos(t) * F.V + sin(t) * (F.chi * F.V)); break;
    case Corruption::Field::F: F.f = Mat3<S>(F.f + t * Mat3<S>::Identity()); break;
    default: break;
  }
  return F;
}

Mat3<D2> HarvestedData::metric(const Vec3<D2>& u) const { return first_order<D2>(chart_, product_, u).g; }
CompatibilityFields<double> HarvestedData::fields(const Vec3<double>& u) const { return harvest(u); }
CompatibilityFields<D1> HarvestedData::fields(const Vec3<D1>& u) const { return harvest(u); }

namespace {

// e1 = unit part of d_1 orthogonal to xi (d_2 as fallback), e2 = Chi e1, e3 = xi.
template <typename S>
Mat3<S> data_frame(const Mat3<S>& g, const CompatibilityFields<S>& F) {
  using std::sqrt;
  auto ip = [&](const Vec3<S>& a, const Vec3<S>& b) -> S { return a.dot(g * b); };
  auto candidate = [&](int k) {
    Vec3<S> t = Vec3<S>::Zero();
    t(k) = S(1.0);
    return Vec3<S>(t - ip(t, F.xi) * F.xi);
  };
  Vec3<S> t = candidate(0);
  S n = sqrt(ip(t, t));
  if (ad::value_of(n) < kFrameFallback) {
    t = candidate(1);
    n = sqrt(ip(t, t));
  }
  Mat3<S> P;
  P.col(0) = t / n;
  P.col(1) = F.chi * P.col(0);
  P.col(2) = F.xi;
  return P;
}

// f from (V, h, Chi) in coordinates: (f e1, e1) = (f e2, e2) = -h, (f e1, e2) = 0,
// (f xi, e1) = (V, e2), (f xi, e2) = -(V, e1), (f xi, xi) = h.
template <typename S>
Mat3<S> rebuilt_f(const Mat3<S>& P, const CompatibilityFields<S>& F) {
  Mat3<S> Pinv = P.inverse();
  Vec3<S> v = Pinv * F.V;
  Mat3<S> fr;
  fr << -F.h, S(0.0), v(1), S(0.0), -F.h, -v(0), v(1), -v(0), F.h;
  return P * fr * Pinv;
}

}  // namespace

ConversePoint converse_point(const CompatibilityData& data, const Eigen::Vector3d& u) {
  const Vec3<D1> u1 = ad::seed<double, 3>(u);
  const Vec3<D2> u2 = ad::seed<D1, 3>(u1);
  const Mat3<D2> g2 = data.metric(u2);
  const Mat3<D1> g1 = ad::val(g2);
  std::array<Mat3<D1>, 3> dg1;
  for (int k = 0; k < 3; ++k) dg1[k] = ad::der(g2, k);
  const std::array<Mat3<D1>, 3> G1 = christoffel<D1>(g1, dg1);

  std::array<Eigen::Matrix3d, 3> G;
  std::array<std::array<Eigen::Matrix3d, 3>, 3> dG;
  for (int j = 0; j < 3; ++j) {
    G[j] = ad::val(G1[j]);
    for (int i = 0; i < 3; ++i) dG[i][j] = ad::der(G1[j], i);
  }
  const Eigen::Matrix3d g = ad::val(g1);

  const CompatibilityFields<D1> F1 = data.fields(u1);
  const Mat3<D1> P1 = data_frame<D1>(g1, F1);
  const Mat3<D1> f1 = rebuilt_f<D1>(P1, F1);

  const Eigen::Matrix3d P = ad::val(P1);
  const Eigen::Matrix3d Pinv = P.inverse();
  const Eigen::Matrix3d E = ad::val(F1.E), f = ad::val(f1), chi = ad::val(F1.chi);
  const Eigen::Vector3d V = ad::val(F1.V), xi = ad::val(F1.xi);

  ConversePoint cp;
  InducedPointData& d = cp.d;
  d.u = u;
  d.g = g;
  d.frame_coords = P;
  d.E = Pinv * E * P;
  d.E_asymmetry = (d.E - d.E.transpose()).cwiseAbs().maxCoeff();
  d.f = Pinv * f * P;
  d.chi = Pinv * chi * P;
  d.V = Pinv * V;
  d.h = F1.h.v;
  d.H = d.E.trace() / 3.0;
  cp.f_supplied = Pinv * ad::val(F1.f) * P;

  Eigen::Vector3d dh_c, dH_c;
  std::array<Eigen::Matrix3d, 3> nE_c, nf_c;
  std::array<Eigen::Vector3d, 3> nV_c, nxi_c;
  for (int m = 0; m < 3; ++m) {
    const Eigen::Matrix3d dE = ad::der(F1.E, m);
    nE_c[m] = covariant_mixed<double>(dE, E, G[m]);
    nf_c[m] = covariant_mixed<double>(ad::der(f1, m), f, G[m]);
    nV_c[m] = covariant_vector<double>(ad::der(F1.V, m), V, G[m]);
    nxi_c[m] = covariant_vector<double>(ad::der(F1.xi, m), xi, G[m]);
    dh_c(m) = F1.h.d[m];
    dH_c(m) = dE.trace() / 3.0;
  }
  for (int a = 0; a < 3; ++a) {
    Eigen::Matrix3d nE = Eigen::Matrix3d::Zero(), nf = Eigen::Matrix3d::Zero();
    Eigen::Vector3d nV = Eigen::Vector3d::Zero(), nxi = Eigen::Vector3d::Zero();
    for (int m = 0; m < 3; ++m) {
      nE += P(m, a) * nE_c[m];
      nf += P(m, a) * nf_c[m];
      nV += P(m, a) * nV_c[m];
      nxi += P(m, a) * nxi_c[m];
    }
    d.nablaE[a] = Pinv * nE * P;
    d.nabla_f[a] = Pinv * nf * P;
    d.nabla_V[a] = Pinv * nV;
    d.nabla_xi[a] = Pinv * nxi;
  }
  d.dh = P.transpose() * dh_c;
  d.dH = P.transpose() * dH_c;
  d.R = riemann_in_frame(riemann_operators(G, dG), P, Pinv);
  return cp;
}

ResidualBundle converse_residuals(const ConversePoint& cp, const ProductModel& product) {
  const InducedPointData& d = cp.d;
  auto pick = [](const ResidualBundle& b, const std::string& name) {
    for (const auto& r : b)
      if (r.name == name) return r.value;
    return 0.0;
  };
  const ResidualBundle alg = product_identity_residuals(d);
  const ResidualBundle se = structure_equation_residuals(d);
  const RankResult rk = rank_check(d);
  return {
      {"converse.f_recipe", (cp.f_supplied - d.f).cwiseAbs().maxCoeff()},
      {"converse.f_squared", pick(alg, "f2_plus_VV")},
      {"converse.fV", pick(alg, "fV_plus_hV")},
      {"converse.h_V_norm", pick(alg, "h2_plus_V2")},
      {"converse.nabla_f", pick(se, "nabla_f")},
      {"converse.nabla_V", pick(se, "nabla_V")},
      {"converse.dh", pick(se, "dh")},
      {"converse.gauss", gauss_residual_max(d, product)},
      {"converse.codazzi", codazzi_residual_max(d, product)},
      {"converse.rank", double(std::abs(rk.rank_plus - 2) + std::abs(rk.rank_minus - 2))},
  };
}

ResidualReport theorem_converse_check(const CompatibilityData& data, const ProductModel& product,
                                      const std::vector<Eigen::Vector3d>& points,
                                      const std::map<std::string, double>& tolerances) {
  static const char* ids[] = {"converse.f_recipe",   "converse.f_squared", "converse.fV",
                              "converse.h_V_norm", "converse.nabla_f", "converse.nabla_V",
                              "converse.dh", "converse.gauss",      "converse.codazzi",
                              "converse.rank"};
  std::vector<CheckRecord> recs;
  for (const char* id : ids) recs.push_back(make_record(id, tolerances));

  for (const auto& u : points) {
    ResidualBundle b;
    try {
      b = converse_residuals(converse_point(data, u), product);
    } catch (const DomainError& e) {
      for (auto& r : recs) r.skip(e.what());
      continue;
    }
    for (size_t i = 0; i < recs.size(); ++i) recs[i].add(b[i].value);
  }
  ResidualReport rep;
  for (auto& r : recs) {
    r.finalize();
    rep.checks.push_back(r);
  }
  rep.finalize();
  return rep;
}

// ---------------------------------------------------------------------------
// Umbilic points

double umbilicity(const InducedPointData& d) {
  Eigen::Matrix3d A = 0.5 * (d.E + d.E.transpose()) - d.H * Eigen::Matrix3d::Identity();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(A, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

UmbilicPoint umbilic_point(const InducedPointData& d, const ProductModel& product, double threshold) {
  UmbilicPoint p;
  p.umbilicity = umbilicity(d);
  p.umbilic = p.umbilicity < threshold;
  if (!p.umbilic) return p;
  const double dc = product.m1.c - product.m2.c;
  p.identity = std::abs(4.0 * d.dH.norm() - d.V.norm() * std::abs(dc));
  p.dH_xi = std::abs(d.dH(2));
  for (int i = 0; i < 2; ++i) p.dH_frame = std::max(p.dH_frame, std::abs(d.dH(i) - 0.25 * dc * d.V(i)));
  return p;
}

UmbilicResult umbilic_mean_curvature_check(const HypersurfaceChart& chart, const ProductModel& product,
                                           const std::vector<Eigen::Vector3d>& points, double threshold) {
  UmbilicResult r;
  r.min_umbilicity = std::numeric_limits<double>::infinity();
  for (const auto& u : points) {
    InducedPointData d;
    try {
      d = induced_data(chart, product, u);
    } catch (const DomainError&) {
      continue;
    }
    ++r.scanned;
    const UmbilicPoint p = umbilic_point(d, product, threshold);
    r.min_umbilicity = std::min(r.min_umbilicity, p.umbilicity);
    if (!p.umbilic) continue;
    ++r.umbilic;
    r.identity = std::max(r.identity, p.identity);
    r.dH_xi = std::max(r.dH_xi, p.dH_xi);
    r.dH_frame = std::max(r.dH_frame, p.dH_frame);
  }
  return r;
}

}  // namespace spinlab
