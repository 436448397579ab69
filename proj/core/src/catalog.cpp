#include "spinlab/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace spinlab {

namespace {

Eigen::Vector3d uniform_box(std::mt19937_64& rng, double w) {
  std::uniform_real_distribution<double> U(-w, w);
  Eigen::Vector3d u;
  for (int i = 0; i < 3; ++i) u(i) = U(rng);
  return u;
}

// Largest usable half-width for a box centred at the chart origin of a factor.
double box_for(const SurfaceModel& m, double preferred) {
  double r = m.chart_radius();
  return std::isfinite(r) ? std::min(preferred, 0.4 * r) : preferred;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

}  // namespace

double param_number(const Params& p, const std::string& key, double fallback) {
  auto it = p.find(key);
  if (it == p.end()) return fallback;
  if (const double* v = std::get_if<double>(&it->second)) return *v;
  throw ConfigError("parameter '" + key + "' must be a number");
}

std::string param_string(const Params& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw ConfigError("missing parameter '" + key + "'");
  if (const std::string* v = std::get_if<std::string>(&it->second)) return *v;
  throw ConfigError("parameter '" + key + "' must be a string");
}

Eigen::Vector3d FlatHyperplane::sample(std::mt19937_64& rng) const { return uniform_box(rng, w_); }

Eigen::Vector3d RoundSphere::sample(std::mt19937_64& rng) const {
  // uniform in the ball of radius 0.9 r, by rejection
  for (;;) {
    Eigen::Vector3d u = uniform_box(rng, 0.9 * r_);
    if (u.norm() < 0.9 * r_) return u;
  }
}

Eigen::Vector3d SliceGeodesic::sample(std::mt19937_64& rng) const { return uniform_box(rng, w_); }

Eigen::Vector3d SphereCircleTube::sample(std::mt19937_64& rng) const {
  Eigen::Vector3d u = uniform_box(rng, w_);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  u(2) = angle(rng);
  return u;
}

Eigen::Vector3d GraphChart::sample(std::mt19937_64& rng) const { return uniform_box(rng, w_); }

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = {
      {"flat-hyperplane", "R^2 x R inside R^2 x R^2 (needs c1 = c2 = 0)", {}},
      {"round-sphere", "coordinate sphere of radius r about the chart origin", {"r"}},
      {"slice-geodesic", "M1(c1) x geodesic of M2(c2); totally geodesic", {}},
      {"sphere-circle-tube", "M1(c1) x circle of coordinate radius a in M2(c2)", {"a"}},
      {"graph", "graph p4 = expr(x, y, z) over the first three chart coordinates", {"expr", "box"}},
  };
  return entries;
}

std::unique_ptr<HypersurfaceChart> make_chart(const std::string& key, const Params& params,
                                              const ProductModel& product) {
  const double R1 = product.m1.chart_radius(), R2 = product.m2.chart_radius();
  if (key == "flat-hyperplane") {
    require(product.m1.c == 0.0 && product.m2.c == 0.0, "flat-hyperplane needs c1 = c2 = 0");
    return std::make_unique<FlatHyperplane>(1.0);
  }
  if (key == "round-sphere") {
    double r = param_number(params, "r", 1.0);
    require(r > 0.0, "round-sphere: r must be positive");
    require(r < 0.95 * std::min(R1, R2), "round-sphere: r leaves the factor chart domains");
    return std::make_unique<RoundSphere>(r);
  }
  if (key == "slice-geodesic") {
    return std::make_unique<SliceGeodesic>(std::min(box_for(product.m1, 0.8), box_for(product.m2, 0.8)));
  }
  if (key == "sphere-circle-tube") {
    double a = param_number(params, "a", 0.5);
    require(a > 0.0 && a < 0.9 * R2, "sphere-circle-tube: a must lie in (0, 0.9 R2)");
    return std::make_unique<SphereCircleTube>(a, box_for(product.m1, 0.8));
  }
  if (key == "graph") {
    double w = param_number(params, "box", 0.5);
    require(w > 0.0, "graph: box must be positive");
    require(std::sqrt(2.0) * w < 0.95 * R1, "graph: box leaves the first factor chart domain");
    return std::make_unique<GraphChart>(Expression::parse(param_string(params, "expr")), w);
  }
  throw ConfigError("unknown catalog key '" + key + "'");
}

}  // namespace spinlab
