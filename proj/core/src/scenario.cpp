#include "spinlab/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "json_io.hpp"
#include "spinlab/catalog.hpp"
#include "spinlab/checks.hpp"
#include "spinlab/clifford.hpp"
#include "spinlab/compatibility.hpp"
#include "spinlab/errors.hpp"
#include "spinlab/induced_spinc.hpp"

namespace spinlab {

const char* to_string(Pairing p) { return p == Pairing::AntiFirst ? "anti-first" : "anti-second"; }

Pairing pairing_from_string(const std::string& s) {
  if (s == "anti-first") return Pairing::AntiFirst;
  if (s == "anti-second") return Pairing::AntiSecond;
  throw ConfigError("pairing must be 'anti-first' or 'anti-second', got '" + s + "'");
}

// ---------------------------------------------------------------------------
// JSON <-> Scenario

namespace detail {

json number_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from_json(const json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw ConfigError(what + " must be a number");
}

json scenario_json(const Scenario& s) {
  json params = json::object();
  for (const auto& [k, v] : s.params) {
    if (const double* x = std::get_if<double>(&v)) params[k] = number_json(*x);
    else params[k] = std::get<std::string>(v);
  }
  json tol = json::object();
  for (const auto& [k, v] : s.tolerances) tol[k] = number_json(v);
  json j = {{"name", s.name},
            {"c1", number_json(s.c1)},
            {"c2", number_json(s.c2)},
            {"pairing", to_string(s.pairing)},
            {"hypersurface", {{"key", s.hypersurface}, {"params", params}}},
            {"samples", s.samples},
            {"seed", s.seed},
            {"tolerances", tol},
            {"umbilic_scan", s.umbilic_scan}};
  if (s.checks_given) j["checks"] = s.checks;
  return j;
}

namespace {

void only_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw ConfigError("unknown key '" + k + "' in " + where);
}

const json& required(const json& j, const std::string& key) {
  if (!j.contains(key)) throw ConfigError("scenario is missing '" + key + "'");
  return j.at(key);
}

std::string string_of(const json& j, const std::string& what) {
  if (!j.is_string()) throw ConfigError(what + " must be a string");
  return j.get<std::string>();
}

long long integer_of(const json& j, const std::string& what) {
  if (!j.is_number_integer()) throw ConfigError(what + " must be an integer");
  return j.get<long long>();
}

}  // namespace

Scenario scenario_from_json(const json& j) {
  only_keys(j,
            {"name", "c1", "c2", "pairing", "hypersurface", "samples", "seed", "tolerances", "checks",
             "umbilic_scan"},
            "scenario");
  Scenario s;
  s.name = string_of(required(j, "name"), "name");
  s.c1 = number_from_json(required(j, "c1"), "c1");
  s.c2 = number_from_json(required(j, "c2"), "c2");
  if (j.contains("pairing")) s.pairing = pairing_from_string(string_of(j["pairing"], "pairing"));

  const json& hs = required(j, "hypersurface");
  only_keys(hs, {"key", "params"}, "hypersurface");
  s.hypersurface = string_of(required(hs, "key"), "hypersurface.key");
  if (hs.contains("params")) {
    const json& ps = hs["params"];
    if (!ps.is_object()) throw ConfigError("hypersurface.params must be an object");
    for (const auto& [k, v] : ps.items()) {
      if (v.is_string()) s.params[k] = v.get<std::string>();
      else if (v.is_number()) s.params[k] = v.get<double>();
      else throw ConfigError("parameter '" + k + "' must be a number or a string");
    }
  }
  if (j.contains("samples")) {
    long long n = integer_of(j["samples"], "samples");
    if (n < 1 || n > 1000000) throw ConfigError("samples must lie in [1, 1000000]");
    s.samples = static_cast<int>(n);
  }
  if (j.contains("seed")) {
    const json& v = j["seed"];
    if (v.is_number_unsigned()) s.seed = v.get<std::uint64_t>();
    else if (v.is_number_integer() && v.get<long long>() >= 0) s.seed = static_cast<std::uint64_t>(v.get<long long>());
    else throw ConfigError("seed must be a non-negative 64-bit integer");
  }
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    if (!t.is_object()) throw ConfigError("tolerances must be an object");
    for (const auto& [k, v] : t.items()) s.tolerances[k] = number_from_json(v, "tolerance of '" + k + "'");
  }
  if (j.contains("checks")) {
    const json& c = j["checks"];
    if (!c.is_array()) throw ConfigError("checks must be an array of check ids");
    s.checks_given = true;
    for (const auto& id : c) s.checks.push_back(string_of(id, "check id"));
  }
  if (j.contains("umbilic_scan")) {
    long long n = integer_of(j["umbilic_scan"], "umbilic_scan");
    if (n < 0 || n > 10000000) throw ConfigError("umbilic_scan must lie in [0, 10000000]");
    s.umbilic_scan = static_cast<int>(n);
  }
  return s;
}

}  // namespace detail

Scenario parse_scenario(const std::string& json_text) {
  detail::json j;
  try {
    j = detail::json::parse(json_text);
  } catch (const detail::json::exception& e) {
    throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
  }
  try {
    return detail::scenario_from_json(j);
  } catch (const detail::json::exception& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read scenario file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::string scenario_to_json(const Scenario& s) { return detail::scenario_json(s).dump(2); }

void validate_scenario(const Scenario& s) {
  if (s.name.empty()) throw ConfigError("scenario name must not be empty");
  if (!std::isfinite(s.c1) || !std::isfinite(s.c2)) throw ConfigError("c1 and c2 must be finite");
  if (s.samples < 1) throw ConfigError("samples must be at least 1");
  if (s.umbilic_scan < 0) throw ConfigError("umbilic_scan must be non-negative");
  for (const auto& [id, t] : s.tolerances) {
    if (!is_registered(id)) throw ConfigError("tolerance given for unknown check '" + id + "'");
    if (!(t > 0.0) || !std::isfinite(t)) throw ConfigError("tolerance of '" + id + "' must be positive and finite");
  }
  std::set<std::string> seen;
  for (const auto& id : s.checks) {
    if (!is_registered(id)) throw ConfigError("unknown check '" + id + "'");
    if (!seen.insert(id).second) throw ConfigError("check '" + id + "' listed twice");
  }
  const auto& entries = catalog_entries();
  auto it = std::find_if(entries.begin(), entries.end(), [&](const CatalogEntry& e) { return e.key == s.hypersurface; });
  if (it == entries.end()) throw ConfigError("unknown catalog key '" + s.hypersurface + "'");
  for (const auto& [k, v] : s.params)
    if (std::find(it->params.begin(), it->params.end(), k) == it->params.end())
      throw ConfigError("hypersurface '" + s.hypersurface + "' has no parameter '" + k + "'");
  try {
    make_chart(s.hypersurface, s.params, ProductModel(s.c1, s.c2, s.pairing));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  tolerance_scale();  // surfaces a malformed SPINLAB_TOL_SCALE as a configuration error
}

// ---------------------------------------------------------------------------
// Built-in catalog

std::vector<Scenario> builtin_scenarios() {
  auto make = [](std::string name, double c1, double c2, std::string key, Params p, std::uint64_t seed) {
    Scenario s;
    s.name = std::move(name);
    s.c1 = c1;
    s.c2 = c2;
    s.hypersurface = std::move(key);
    s.params = std::move(p);
    s.samples = 25;
    s.seed = seed;
    return s;
  };
  std::vector<Scenario> v;
  v.push_back(make("flat-hyperplane", 0.0, 0.0, "flat-hyperplane", {}, 11));
  v.push_back(make("round-sphere-unit", 0.0, 0.0, "round-sphere", {{"r", 1.0}}, 12));
  v.push_back(make("round-sphere-s2xs2", 1.0, 1.0, "round-sphere", {{"r", 0.6}}, 13));
  v.push_back(make("round-sphere-s2xh2", 1.0, -0.5, "round-sphere", {{"r", 0.5}}, 14));
  v.push_back(make("slice-geodesic-s2xs2", 1.0, 1.0, "slice-geodesic", {}, 15));
  v.push_back(make("slice-geodesic-h2xs2", -1.0, 2.0, "slice-geodesic", {}, 16));
  v.push_back(make("sphere-circle-tube", 1.0, -0.5, "sphere-circle-tube", {{"a", 0.5}}, 17));
  Scenario g1 = make("graph-s2xr2", 1.0, 0.0, "graph",
                     {{"expr", std::string("0.3*sin(x)*cos(y)+0.2*z*z-0.1*x*y*z")}}, 18);
  g1.umbilic_scan = 200;
  v.push_back(g1);
  v.push_back(make("graph-h2xs2", -0.5, 0.7, "graph", {{"expr", std::string("0.2*x*x-0.15*y*z+0.1*cos(2*z)")}}, 19));
  v.push_back(make("graph-flat", 0.0, 0.0, "graph", {{"expr", std::string("0.25*x*y+0.1*sin(3*z)+0.05*x^3")}}, 20));
  return v;
}

// ---------------------------------------------------------------------------
// Runner

namespace {

/// What one check contributes at one point.
struct Contribution {
  bool skipped = false;
  std::string reason;
  double residual = 0.0;
  std::vector<std::pair<std::string, double>> max_m, min_m, sum_m;
  bool has_value = false;
  double value = 0.0;  // per-point value
  std::vector<std::string> notes;

  void skip(std::string why) {
    skipped = true;
    reason = std::move(why);
  }
  void mx(const std::string& k, double v) { max_m.emplace_back(k, v); }
  void mn(const std::string& k, double v) { min_m.emplace_back(k, v); }
  void sum(const std::string& k, double v) { sum_m.emplace_back(k, v); }
};

/// Lazily computed per-point data; owned by a single worker.
class PointContext {
 public:
  PointContext(const HypersurfaceChart& chart, const ProductModel& product, const Eigen::Vector3d& u)
      : chart_(chart), product_(product), u_(u) {}

  const InducedPointData* data() {
    if (!tried_) {
      tried_ = true;
      try {
        d_ = induced_data(chart_, product_, u_);
      } catch (const DomainError& e) {
        error_ = e.what();
      }
    }
    return d_ ? &*d_ : nullptr;
  }
  const std::string& error() const { return error_; }

  const InducedSpinc& spinc(int j) {
    auto& slot = sp_[j - 1];
    if (!slot) slot = restrict_structure(product_, *data(), j == 1 ? Structure::S1 : Structure::S2);
    return *slot;
  }

  /// Converse residuals on data harvested from the immersion; nullptr with the reason in error().
  const ResidualBundle* converse() {
    if (!converse_tried_) {
      converse_tried_ = true;
      try {
        HarvestedData data(chart_, product_);
        converse_ = converse_residuals(converse_point(data, u_), product_);
      } catch (const DomainError& e) {
        converse_error_ = e.what();
      }
    }
    return converse_ ? &*converse_ : nullptr;
  }
  const std::string& converse_error() const { return converse_error_; }

  const HypersurfaceChart& chart() const { return chart_; }
  const ProductModel& product() const { return product_; }
  const Eigen::Vector3d& u() const { return u_; }

 private:
  const HypersurfaceChart& chart_;
  const ProductModel& product_;
  Eigen::Vector3d u_;
  bool tried_ = false;
  std::optional<InducedPointData> d_;
  std::string error_;
  std::array<std::optional<InducedSpinc>, 2> sp_;
  bool converse_tried_ = false;
  std::optional<ResidualBundle> converse_;
  std::string converse_error_;
};

struct Env {
  std::mt19937_64 rng;
  double tolerance = 0.0;
};

using Evaluator = void (*)(PointContext&, Env&, Contribution&);

const CliffordModel& model(int m) {
  static const std::array<CliffordModel, 3> models = {build_clifford(2), build_clifford(3), build_clifford(4)};
  return models[m - 2];
}

Eigen::VectorXd gaussian(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> N(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = N(rng);
  return v;
}

CVec gaussian_spinor(std::mt19937_64& rng, int n) {
  Eigen::VectorXd re = gaussian(rng, n), im = gaussian(rng, n);
  CVec v(n);
  for (int i = 0; i < n; ++i) v(i) = cplx(re(i), im(i));
  return v;
}

/// Fetches the induced data or marks the contribution skipped.
const InducedPointData* need(PointContext& ctx, Contribution& c) {
  const InducedPointData* d = ctx.data();
  if (!d) c.skip(ctx.error());
  return d;
}

void bundle(Contribution& c, const ResidualBundle& b, const std::string& prefix = "") {
  for (const auto& r : b) {
    c.mx(prefix + r.name, std::abs(r.value));
    c.residual = std::max(c.residual, std::abs(r.value));
  }
}

/// Per-structure scalar: metrics j1, j2 and the max as residual.
template <typename F>
void per_structure(PointContext& ctx, Contribution& c, F f) {
  for (int j = 1; j <= 2; ++j) {
    double v = f(ctx.spinc(j), j);
    c.mx("j" + std::to_string(j), v);
    c.residual = std::max(c.residual, v);
  }
}

// --- clifford_core

void eval_clifford_relations(PointContext&, Env& env, Contribution& c) {
  for (int m = 2; m <= 4; ++m) {
    const CliffordModel& M = model(m);
    const int n = M.spinor_dim();
    const CMat I = CMat::Identity(n, n);
    Eigen::VectorXd x = gaussian(env.rng, m), y = gaussian(env.rng, m);
    CMat X = M.act(x), Y = M.act(y);
    const std::string dim = "_dim" + std::to_string(m);
    c.mx("anticommutation" + dim, (X * Y + Y * X + 2.0 * x.dot(y) * I).norm());
    c.mx("skew_adjoint" + dim, (X.adjoint() + X).norm());
    c.mx("volume" + dim, m == 3 ? (M.volume - I).norm() : (M.volume * M.volume - I).norm());
  }
  Eigen::VectorXd x1 = gaussian(env.rng, 2), x2 = gaussian(env.rng, 2);
  CVec p1 = gaussian_spinor(env.rng, 2), p2 = gaussian_spinor(env.rng, 2);
  Eigen::VectorXd x(4);
  x << x1, x2;
  c.mx("product_clifford", (product_clifford(x1, x2, p1, p2) - model(4).act(x) * tensor(p1, p2)).norm());
  for (const auto& [k, v] : c.max_m) c.residual = std::max(c.residual, v);
}

void eval_kahler_spectrum(PointContext&, Env& env, Contribution& c) {
  for (int m : {2, 4}) {
    Eigen::MatrixXd J0 = Eigen::MatrixXd::Zero(m, m);
    for (int k = 0; k < m; k += 2) {
      J0(k + 1, k) = 1.0;
      J0(k, k + 1) = -1.0;
    }
    Eigen::MatrixXd A(m, m);
    for (int k = 0; k < m; ++k) A.col(k) = gaussian(env.rng, m);
    Eigen::MatrixXd Q = Eigen::HouseholderQR<Eigen::MatrixXd>(A).householderQ();
    CMat K = kahler_action(model(m), Q * J0 * Q.transpose());
    Eigen::ComplexEigenSolver<CMat> es(K, false);
    std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) { return a.imag() < b.imag(); });
    // i(m/2 - 2r), r = 0..m/2, with binomial multiplicities
    std::vector<cplx> want = m == 2 ? std::vector<cplx>{{0, -1}, {0, 1}}
                                    : std::vector<cplx>{{0, -2}, {0, 0}, {0, 0}, {0, 2}};
    double worst = 0.0;
    for (size_t k = 0; k < ev.size(); ++k) worst = std::max(worst, std::abs(ev[k] - want[k]));
    c.mx("dim" + std::to_string(m), worst);
    c.residual = std::max(c.residual, worst);
  }
}

void eval_symmetric_commutator(PointContext&, Env& env, Contribution& c) {
  Eigen::Matrix3d A;
  for (int k = 0; k < 3; ++k) A.col(k) = gaussian(env.rng, 3);
  c.residual = commutator_residual(0.5 * (A + A.transpose()), model(3));
}

// --- space_forms

void eval_parallel_spinor(PointContext& ctx, Env& env, Contribution& c) {
  const InducedPointData* d = need(ctx, c);
  if (!d) return;
  Eigen::Vector4d dp = gaussian(env.rng, 4);
  for (int j = 1; j <= 2; ++j) {
    double r = parallel_spinor_field(ctx.product(), j == 1 ? Structure::S1 : Structure::S2).residual(d->p, dp);
    c.mx("j" + std::to_string(j), r);
    c.residual = std::max(c.residual, r);
  }
}

void eval_aux_curvature(PointContext& ctx, Env&, Contribution& c) {
  const InducedPointData* d = need(ctx, c);
  if (!d) return;
  for (int j = 1; j <= 2; ++j) {
    double r = auxiliary_curvature_consistency(ctx.product(), j == 1 ? Structure::S1 : Structure::S2, {d->p});
    c.mx("j" + std::to_string(j), r);
    c.residual = std::max(c.residual, r);
  }
}

// --- hypersurface_geometry

void eval_shape(PointContext& ctx, Env&, Contribution& c) {
  const InducedPointData* d = need(ctx, c);
  if (!d) return;
  c.residual = d->E_asymmetry;
  c.has_value = true;
  c.value = d->H;
  c.mx("H_max", d->H);
  c.mn("H_min", d->H);
}

template <ResidualBundle (*F)(const InducedPointData&)>
void eval_bundle(PointContext& ctx, Env&, Contribution& c) {
  const InducedPointData* d = need(ctx, c);
  if (d) bundle(c, F(*d));
}

void eval_rank(PointContext& ctx, Env&, Contribution& c) {
  const InducedPointData* d = need(ctx, c);
  if (!d) return;
  RankResult r = rank_check(*d);
  c.residual = std::abs(r.rank_plus - 2) + std::abs(r.rank_minus - 2);
  c.mn("rank_plus_min", r.rank_plus);
  c.mx("rank_plus_max", r.rank_plus);
  c.mn("rank_minus_min", r.rank_minus);
  c.mx("rank_minus_max", r.rank_minus);
}

void eval_gauss(PointContext& ctx, Env&, Contribution& c) {
  if (const InducedPointData* d = need(ctx, c)) c.residual = gauss_residual_max(*d, ctx.product());
}

void eval_codazzi(PointContext& ctx, Env&, Contribution& c) {
  if (const InducedPointData* d = need(ctx, c)) c.residual = codazzi_residual_max(*d, ctx.product());
}

void eval_nabla_xi(PointContext& ctx, Env&, Contribution& c) {
  if (const InducedPointData* d = need(ctx, c)) c.residual = nabla_xi_residual(*d);
}

// --- induced_spinc

void eval_spinc_clifford(PointContext& ctx, Env&, Contribution& c) {
  if (!need(ctx, c)) return;
  per_structure(ctx, c, [](const InducedSpinc& sp, int) { return max_residual(clifford_relations(sp)); });
  for (int j = 1; j <= 2; ++j) {
    double s = ctx.spinc(j).volume_sign;
    c.mn("volume_sign_j" + std::to_string(j) + "_min", s);
    c.mx("volume_sign_j" + std::to_string(j) + "_max", s);
  }
}

void eval_spinc_killing(PointContext& ctx, Env&, Contribution& c) {
  const InducedPointData* d = need(ctx, c);
  if (d) per_structure(ctx, c, [d](const InducedSpinc& sp, int) { return killing_residual_max(sp, *d); });
}

void eval_spinc_algebraic(PointContext& ctx, Env&, Contribution& c) {
  const InducedPointData* d = need(ctx, c);
  if (d) per_structure(ctx, c, [d](const InducedSpinc& sp, int) { return algebraic_condition(sp, *d); });
}

void eval_phi_identities(PointContext& ctx, Env&, Contribution& c) {
  const InducedPointData* d = need(ctx, c);
  if (d) bundle(c, spinor_identities(ctx.spinc(2), *d));
}

void eval_spinc_omega(PointContext& ctx, Env&, Contribution& c) {
  const InducedPointData* d = need(ctx, c);
  if (!d) return;
  per_structure(ctx, c, [d](const InducedSpinc& sp, int) { return omega_formula_check(sp, *d); });
  for (int j = 1; j <= 2; ++j) c.mx("max_abs_omega", ctx.spinc(j).Omega.cwiseAbs().maxCoeff());
}

void eval_restriction(PointContext& ctx, Env&, Contribution& c) {
  if (need(ctx, c)) per_structure(ctx, c, [](const InducedSpinc& sp, int) { return restriction_relation_residual(sp); });
}

void eval_spinc_projections(PointContext& ctx, Env&, Contribution& c) {
  const InducedPointData* d = need(ctx, c);
  if (!d) return;
  ProjectionSpinorResult r = projection_spinor_check(*d);
  c.mx("structure1", r.first);
  c.mx("structure2", r.second);
  c.residual = std::max(r.first, r.second);
}

void eval_dirac(PointContext& ctx, Env&, Contribution& c) {
  const InducedPointData* d = need(ctx, c);
  if (d) per_structure(ctx, c, [d](const InducedSpinc& sp, int) { return dirac_and_energy_momentum(sp, *d).dirac_residual; });
}

void eval_energy_momentum(PointContext& ctx, Env&, Contribution& c) {
  const InducedPointData* d = need(ctx, c);
  if (!d) return;
  const Eigen::Matrix3d Q1 = dirac_and_energy_momentum(ctx.spinc(1), *d).Q;
  const Eigen::Matrix3d Q2 = dirac_and_energy_momentum(ctx.spinc(2), *d).Q;
  const Eigen::Matrix3d& E = d->E;
  double r1 = (2.0 * Q1 - E).cwiseAbs().maxCoeff();
  double r2 = (2.0 * Q2 + E).cwiseAbs().maxCoeff();
  c.mx("two_Q1_minus_E", r1);
  c.mx("two_Q2_plus_E", r2);
  c.mx("Q1_minus_E", (Q1 - E).cwiseAbs().maxCoeff());
  c.mx("Q1_plus_Q2", (Q1 + Q2).cwiseAbs().maxCoeff());
  const double e2 = E.squaredNorm();
  if (e2 > 1e-12) {
    // least-squares ratio Q = lambda E
    double l1 = (Q1.array() * E.array()).sum() / e2, l2 = (Q2.array() * E.array()).sum() / e2;
    c.mn("Q1_over_E_min", l1);
    c.mx("Q1_over_E_max", l1);
    c.mn("Q2_over_E_min", l2);
    c.mx("Q2_over_E_max", l2);
  }
  c.residual = std::max(r1, r2);
}

// --- compatibility_engine

template <int Tag>
void eval_system(PointContext& ctx, Env&, Contribution& c) {
  const InducedPointData* d = need(ctx, c);
  if (!d) return;
  const Eigen::Matrix3d& Omega = ctx.spinc(Tag).Omega;
  SystemResiduals r = system_residuals(Tag, *d, Omega);
  for (const auto& e : r.residuals) c.mx(e.name, std::abs(e.value));
  c.residual = r.max();
  const bool vzero = d->V.norm() < 1e-12;
  c.sum("V_zero_points", vzero ? 1.0 : 0.0);
  if (vzero) {
    // Equations whose auxiliary-curvature terms drop out when V = 0.
    SystemResiduals bare = system_residuals(Tag, *d, Eigen::Matrix3d::Zero());
    std::string list;
    for (size_t i = 0; i < r.residuals.size(); ++i)
      if (std::abs(r.residuals[i].value - bare.residuals[i].value) < 1e-14)
        list += (list.empty() ? "" : ", ") + r.residuals[i].name;
    c.notes.push_back("V = 0 points: Omega terms vanish in " + (list.empty() ? std::string("no equation") : list));
  }
}

void eval_gauss_codazzi(PointContext& ctx, Env& env, Contribution& c) {
  const InducedPointData* d = need(ctx, c);
  if (!d) return;
  const ProductModel& P = ctx.product();
  // Perturbed companion: E + 0.1 w w^T, same (h, V), so Omega_j keeps its closed form.
  std::optional<InducedPointData> dp;
  try {
    dp = induced_data(ctx.chart(), P, ctx.u(), rank_one_perturbation(env.rng));
  } catch (const DomainError&) {
  }
  for (int tag = 1; tag <= 2; ++tag) {
    const std::string t = "_j" + std::to_string(tag);
    EquivalencePoint ep = equivalence_point(tag, *d, P, ctx.spinc(tag).Omega);
    EquivalenceVerdict v = gauss_iff_codazzi(tag, {ep}, env.tolerance);
    c.sum("tested" + t, v.forward_tested + v.backward_tested);
    c.sum("confirmed" + t, v.forward_confirmed + v.backward_confirmed);
    c.sum("covanishing" + t, v.covanishing);
    c.sum("hypothesis_failed" + t, v.skipped);
    c.sum("counterexamples" + t, double(v.counterexamples.size()));
    c.mx("system" + t, ep.system);
    c.residual = std::max(c.residual, v.max_implied);
    if (dp) {
      EquivalencePoint pp = equivalence_point(tag, *dp, P, omega_closed_form(tag, P.m1.c, P.m2.c, dp->h, dp->V));
      EquivalenceVerdict pv = gauss_iff_codazzi(tag, {pp}, env.tolerance);
      c.sum("perturbed_points" + t, 1.0 - pv.skipped);
      c.sum("perturbed_covanishing" + t, pv.covanishing);
      c.sum("perturbed_counterexamples" + t, double(pv.counterexamples.size()));
      c.residual = std::max(c.residual, pv.max_implied);
    }
  }
}

enum class Fwd { Killing, Algebraic, Omega };

template <Fwd K>
void eval_forward(PointContext& ctx, Env&, Contribution& c) {
  const InducedPointData* d = need(ctx, c);
  if (!d) return;
  ForwardPoint f = forward_point(*d, ctx.spinc(1), ctx.spinc(2));
  const auto& a = K == Fwd::Killing ? f.killing : K == Fwd::Algebraic ? f.algebraic : f.omega;
  c.mx("j1", a[0]);
  c.mx("j2", a[1]);
  if (K == Fwd::Omega) c.mx("max_abs_omega", f.omega_size);
  c.residual = std::max(a[0], a[1]);
}

void eval_converse(PointContext& ctx, Env&, Contribution& c, const std::string& id) {
  const ResidualBundle* b = ctx.converse();
  if (!b) {
    c.skip(ctx.converse_error());
    return;
  }
  for (const auto& r : *b)
    if (r.name == id) c.residual = r.value;
}

#define SPINLAB_CONVERSE(name) \
  [](PointContext& x, Env& e, Contribution& c) { eval_converse(x, e, c, "converse." name); }

void eval_umbilic(PointContext& ctx, Env&, Contribution& c) {
  const InducedPointData* d = need(ctx, c);
  if (!d) return;
  UmbilicPoint p = umbilic_point(*d, ctx.product());
  c.mn("min_umbilicity", p.umbilicity);
  c.sum("scanned", 1.0);
  if (!p.umbilic) {
    c.skip("not an umbilic point");
    return;
  }
  c.mx("identity", p.identity);
  c.mx("dH_xi", p.dH_xi);
  c.mx("dH_frame", p.dH_frame);
  c.residual = std::max({p.identity, p.dH_xi, p.dH_frame});
}

const std::map<std::string, Evaluator>& evaluators() {
  static const std::map<std::string, Evaluator> m = {
      {"clifford.relations", eval_clifford_relations},
      {"clifford.kahler_spectrum", eval_kahler_spectrum},
      {"clifford.symmetric_commutator", eval_symmetric_commutator},
      {"product.parallel_spinor", eval_parallel_spinor},
      {"product.aux_curvature", eval_aux_curvature},
      {"shape.operator", eval_shape},
      {"structure.product_identities", eval_bundle<product_identity_residuals>},
      {"structure.induced_identities", eval_bundle<induced_identity_residuals>},
      {"structure.almost_contact", eval_bundle<verify_almost_contact>},
      {"structure.projections", eval_bundle<projection_residuals>},
      {"structure.equations", eval_bundle<structure_equation_residuals>},
      {"structure.rank", eval_rank},
      {"curvature.gauss", eval_gauss},
      {"curvature.codazzi", eval_codazzi},
      {"geometry.nabla_xi", eval_nabla_xi},
      {"spinc.clifford", eval_spinc_clifford},
      {"spinc.killing", eval_spinc_killing},
      {"spinc.algebraic", eval_spinc_algebraic},
      {"spinc.phi_identities", eval_phi_identities},
      {"spinc.omega", eval_spinc_omega},
      {"spinc.restriction_relation", eval_restriction},
      {"spinc.projections", eval_spinc_projections},
      {"spinc.dirac", eval_dirac},
      {"spinc.energy_momentum", eval_energy_momentum},
      {"system.one", eval_system<1>},
      {"system.two", eval_system<2>},
      {"system.gauss_codazzi", eval_gauss_codazzi},
      {"forward.killing", eval_forward<Fwd::Killing>},
      {"forward.algebraic", eval_forward<Fwd::Algebraic>},
      {"forward.omega", eval_forward<Fwd::Omega>},
      {"converse.f_recipe", SPINLAB_CONVERSE("f_recipe")},
      {"converse.f_squared", SPINLAB_CONVERSE("f_squared")},
      {"converse.fV", SPINLAB_CONVERSE("fV")},
      {"converse.h_V_norm", SPINLAB_CONVERSE("h_V_norm")},
      {"converse.nabla_f", SPINLAB_CONVERSE("nabla_f")},
      {"converse.nabla_V", SPINLAB_CONVERSE("nabla_V")},
      {"converse.dh", SPINLAB_CONVERSE("dh")},
      {"converse.gauss", SPINLAB_CONVERSE("gauss")},
      {"converse.codazzi", SPINLAB_CONVERSE("codazzi")},
      {"converse.rank", SPINLAB_CONVERSE("rank")},
      {"umbilic.mean_curvature", eval_umbilic},
  };
  return m;
}

#undef SPINLAB_CONVERSE

int registry_index(const std::string& id) {
  const auto& r = check_registry();
  for (size_t i = 0; i < r.size(); ++i)
    if (r[i].id == id) return static_cast<int>(i);
  return -1;
}

void merge(CheckRecord& rec, const Contribution& c) {
  if (c.skipped) {
    rec.skip(c.reason);
  } else {
    rec.add(c.residual);
    if (c.has_value) rec.per_point.push_back(c.value);
  }
  for (const auto& [k, v] : c.max_m) rec.metric_max(k, v);
  for (const auto& [k, v] : c.min_m) rec.metric_min(k, v);
  for (const auto& [k, v] : c.sum_m) rec.metric_add(k, v);
  for (const auto& n : c.notes) rec.note(n);
}

std::string format_count(double v) { return std::to_string(static_cast<long long>(v)); }

/// Notes derived from the aggregated record.
void annotate(CheckRecord& rec, const ProductModel& P) {
  auto metric = [&](const std::string& k) {
    auto it = rec.metrics.find(k);
    return it == rec.metrics.end() ? -1.0 : it->second;
  };
  if ((rec.id == "spinc.omega" || rec.id == "forward.omega") && rec.points_evaluated > 0) {
    if (metric("max_abs_omega") == 0.0) rec.note("Omega_1 and Omega_2 vanish identically at every sampled point");
    if (P.m1.c == 0.0 && P.m2.c == 0.0) rec.note(kSpinCaseNote);
  }
  if (rec.id == "spinc.energy_momentum" && rec.points_evaluated > 0) {
    rec.note("signed relation checked: Q_phi1 = E/2 and Q_phi2 = -E/2 (ratios Q/E in the metrics)");
  }
  if (rec.id == "umbilic.mean_curvature") {
    const std::string scanned = format_count(std::max(0.0, metric("scanned")));
    if (rec.points_evaluated == 0)
      rec.note("vacuous: no umbilic point among " + scanned + " scanned points");
    else
      rec.note("verified at " + std::to_string(rec.points_evaluated) + " umbilic points out of " + scanned +
               " scanned");
  }
  if (rec.id == "system.gauss_codazzi") {
    for (const char* t : {"_j1", "_j2"}) {
      double n = metric(std::string("counterexamples") + t);
      if (n > 0) rec.note(std::string("Gauss/Codazzi counterexamples") + t + ": " + format_count(n));
    }
  }
}

}  // namespace

ResidualReport run_scenario(const Scenario& s, int threads) {
  const auto t0 = std::chrono::steady_clock::now();
  validate_scenario(s);
  const ProductModel product(s.c1, s.c2, s.pairing);
  const std::unique_ptr<HypersurfaceChart> chart = make_chart(s.hypersurface, s.params, product);

  std::vector<std::string> ids;
  if (s.checks_given) {
    ids = s.checks;
  } else {
    for (const auto& c : check_registry()) ids.push_back(c.id);
  }

  ResidualReport rep;
  rep.scenario = s;
  if (ids.empty()) rep.warnings.push_back("no checks requested; the report is empty");
  if (double k = tolerance_scale(); k != 1.0) {
    std::ostringstream os;
    os << "tolerances scaled by " << k << " (SPINLAB_TOL_SCALE)";
    rep.warnings.push_back(os.str());
  }

  std::vector<CheckRecord> recs;
  std::vector<Evaluator> evals;
  std::vector<int> reg_index;
  int umbilic_slot = -1;
  for (const auto& id : ids) {
    recs.push_back(make_record(id, s.tolerances));
    evals.push_back(evaluators().at(id));
    reg_index.push_back(registry_index(id));
    if (id == "umbilic.mean_curvature") umbilic_slot = static_cast<int>(recs.size()) - 1;
  }

  // Sample points first; the extra scan points only feed the umbilic check.
  std::mt19937_64 rng(s.seed);
  const int total = s.samples + (umbilic_slot >= 0 ? s.umbilic_scan : 0);
  std::vector<Eigen::Vector3d> points;
  points.reserve(total);
  for (int i = 0; i < total; ++i) points.push_back(chart->sample(rng));

  std::vector<std::vector<Contribution>> contrib(points.size(), std::vector<Contribution>(ids.size()));
  auto work = [&](size_t i) {
    PointContext ctx(*chart, product, points[i]);
    for (size_t k = 0; k < ids.size(); ++k) {
      if (i >= static_cast<size_t>(s.samples) && static_cast<int>(k) != umbilic_slot) continue;
      std::seed_seq seq{static_cast<std::uint32_t>(s.seed), static_cast<std::uint32_t>(s.seed >> 32),
                        static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(reg_index[k])};
      Env env{std::mt19937_64(seq), recs[k].tolerance};
      try {
        evals[k](ctx, env, contrib[i][k]);
      } catch (const DomainError& e) {
        contrib[i][k] = Contribution{};
        contrib[i][k].skip(e.what());
      }
    }
  };

  const size_t nthreads = std::max<size_t>(
      1, std::min<size_t>(points.size(), threads > 0 ? threads : std::max(1u, std::thread::hardware_concurrency())));
  if (nthreads == 1) {
    for (size_t i = 0; i < points.size(); ++i) work(i);
  } else {
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (size_t t = 0; t < nthreads; ++t) {
      pool.emplace_back([&] {
        for (size_t i; (i = next.fetch_add(1)) < points.size();) {
          try {
            work(i);
          } catch (...) {
            std::lock_guard<std::mutex> lock(mu);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  for (size_t i = 0; i < points.size(); ++i)
    for (size_t k = 0; k < ids.size(); ++k) {
      if (i >= static_cast<size_t>(s.samples) && static_cast<int>(k) != umbilic_slot) continue;
      merge(recs[k], contrib[i][k]);
    }
  for (auto& r : recs) {
    annotate(r, product);
    r.finalize();
  }
  rep.checks = std::move(recs);
  rep.finalize();
  rep.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

ResidualReport run_scenario_file(const std::string& path, int threads) {
  return run_scenario(load_scenario(path), threads);
}

std::vector<ResidualReport> run_catalog(std::optional<Pairing> pairing, int threads) {
  std::vector<ResidualReport> out;
  for (Scenario s : builtin_scenarios()) {
    if (pairing) s.pairing = *pairing;
    out.push_back(run_scenario(s, threads));
  }
  return out;
}

int exit_code(const std::vector<ResidualReport>& reports) {
  for (const auto& r : reports)
    if (r.overall == Verdict::Fail) return 1;
  return 0;
}

}  // namespace spinlab
