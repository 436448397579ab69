#include "spinlab/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "spinlab/errors.hpp"

namespace spinlab {

namespace {

// Tolerance tiers: exact identities, first-derivative quantities, curvature.
constexpr double kExact = 1e-12;
constexpr double kFirst = 1e-8;
constexpr double kCurv = 1e-5;

}  // namespace

const std::vector<CheckInfo>& check_registry() {
  static const std::vector<CheckInfo> reg = {
      {"clifford.relations", "Clifford relations, volume element and product spinor identification", kExact},
      {"clifford.kahler_spectrum", "Kahler form action: eigenvalues i(m - 2r) with binomial multiplicities", kExact},
      {"clifford.symmetric_commutator", "commutator of gamma(E e_i), gamma(E e_j) for symmetric E", kExact},
      {"product.parallel_spinor", "parallel spinors of the two spin^c structures on M1 x M2", kExact},
      {"product.aux_curvature", "curvature of the auxiliary bundle from loop holonomy vs Omega^N", 1e-6},
      {"shape.operator", "shape operator symmetric; mean curvature H = tr(E)/3 per point", 1e-10},
      {"structure.product_identities", "f symmetric, f^2 + V(V,.) = Id, fV = -hV, h^2 + |V|^2 = 1", 1e-9},
      {"structure.induced_identities", "identities between (f, V, h) and (Chi, xi, eta) induced by JF = FJ", 1e-9},
      {"structure.almost_contact", "almost contact metric structure Chi = J - eta(.) nu, xi = -J nu", 1e-9},
      {"structure.projections", "factor projections of V, xi and nu", 1e-10},
      {"structure.equations", "(nabla_X f)Y = (Y,V)EX + (EX,Y)V, nabla_X V = -fEX + hEX, dh = -2(EV, .)", 1e-6},
      {"structure.rank", "(F + Id)/2 and (F - Id)/2 of rank 2", 0.5},
      {"curvature.gauss", "Gauss equation for hypersurfaces of M1(c1) x M2(c2)", kCurv},
      {"curvature.codazzi", "Codazzi equation for hypersurfaces of M1(c1) x M2(c2)", kCurv},
      {"geometry.nabla_xi", "nabla_X xi = Chi E X", 1e-6},
      {"spinc.clifford", "gamma_j(X) = +/- X . nu on the chirality half of the ambient spinors", kExact},
      {"spinc.killing", "generalized Killing spinor nabla_X phi_j = (-1)^j gamma_j(EX) phi_j / 2", 1e-6},
      {"spinc.algebraic", "gamma_1(xi) phi_1 = -i phi_1 and gamma_2(V) phi_2 = -i gamma_2(xi) phi_2 + h phi_2", kFirst},
      {"spinc.phi_identities", "V and h recovered from phi_2: (gamma_2(V) phi_2, phi_2) = 0, V_1, V_2, h", kFirst},
      {"spinc.omega", "auxiliary curvature Omega_j in the frame (e1, Chi e1, xi)", 1e-6},
      {"spinc.restriction_relation", "Omega^N . psi restricted to M vs gamma(Omega) phi and nu _| Omega^N", kFirst},
      {"spinc.projections", "spinor combinations of pi_1, pi_2 of nu, xi, V", 1e-10},
      {"spinc.dirac", "D^1 phi_1 = (3/2) H phi_1, D^2 phi_2 = -(3/2) H phi_2", kCurv},
      {"spinc.energy_momentum", "energy-momentum tensors: Q_phi1 = E/2, Q_phi2 = -E/2 (signed relation recorded)", kCurv},
      {"system.one", "System 1: Ricci identity for phi_1 projected on phi_1, gamma_1(e_k) phi_1", kCurv},
      {"system.two", "System 2: Ricci identity for phi_2 projected on phi_2, gamma_2(e_k) phi_2", kCurv},
      {"system.gauss_codazzi", "under System j, Gauss holds iff Codazzi holds", kCurv},
      {"forward.killing", "isometric immersion => generalized Killing spinors phi_1, phi_2", 1e-6},
      {"forward.algebraic", "isometric immersion => algebraic conditions on phi_1, phi_2", kFirst},
      {"forward.omega", "isometric immersion => closed form of Omega_1, Omega_2", 1e-6},
      {"converse.f_recipe", "f rebuilt from (V, h, Chi) matches the supplied f", 1e-9},
      {"converse.f_squared", "f^2 X + (V, X) V = X", 1e-9},
      {"converse.fV", "f V = -h V", 1e-9},
      {"converse.h_V_norm", "h^2 + |V|^2 = 1", 1e-9},
      {"converse.nabla_f", "(nabla_X f) Y = (Y, V) EX + (EX, Y) V", 1e-6},
      {"converse.nabla_V", "nabla_X V = -f EX + h EX", 1e-6},
      {"converse.dh", "dh = -2 (EV, .)", 1e-6},
      {"converse.gauss", "Gauss compatibility equation", kCurv},
      {"converse.codazzi", "Codazzi compatibility equation", kCurv},
      {"converse.rank", "(F +/- Id)/2 of rank 2", 0.5},
      {"umbilic.mean_curvature", "umbilic points: |V| |c1 - c2| = 4 |dH|, dH(xi) = 0", kCurv},
  };
  return reg;
}

bool is_registered(const std::string& id) {
  const auto& r = check_registry();
  return std::any_of(r.begin(), r.end(), [&](const CheckInfo& c) { return c.id == id; });
}

const CheckInfo& check_info(const std::string& id) {
  for (const auto& c : check_registry())
    if (c.id == id) return c;
  throw ConfigError("unknown check '" + id + "'");
}

double tolerance_scale() {
  const char* env = std::getenv("SPINLAB_TOL_SCALE");
  if (!env || !*env) return 1.0;
  char* end = nullptr;
  double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !std::isfinite(v) || v <= 0.0)
    throw ConfigError(std::string("SPINLAB_TOL_SCALE must be a positive number, got '") + env + "'");
  return v;
}

double effective_tolerance(const std::string& id, const std::map<std::string, double>& overrides) {
  auto it = overrides.find(id);
  double t = it != overrides.end() ? it->second : check_info(id).tolerance;
  return t * tolerance_scale();
}

CheckRecord make_record(const std::string& id, const std::map<std::string, double>& overrides) {
  CheckRecord r;
  r.id = id;
  r.anchor = check_info(id).anchor;
  r.tolerance = effective_tolerance(id, overrides);
  return r;
}

}  // namespace spinlab
