#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "spinlab/expression.hpp"
#include "spinlab/hypersurface.hpp"

namespace spinlab {

using ParamValue = std::variant<double, std::string>;
using Params = std::map<std::string, ParamValue>;

double param_number(const Params& p, const std::string& key, double fallback);
std::string param_string(const Params& p, const std::string& key);

/// p = (u1, u2, u3, 0): R^3 = R^2 x R inside R^2 x R^2.
class FlatHyperplane : public ChartImpl<FlatHyperplane> {
 public:
  explicit FlatHyperplane(double half_width = 1.0) : w_(half_width) {}
  std::string name() const override { return "flat-hyperplane"; }
  template <typename S>
  Vec4<S> map(const Vec3<S>& u) const {
    return Vec4<S>(u(0), u(1), u(2), S(0.0));
  }
  Eigen::Vector3d sample(std::mt19937_64& rng) const override;

 private:
  double w_;
};

/// Coordinate sphere |p| = r around the chart origin, as the graph
/// p = (sqrt(r^2 - |u|^2), u1, u2, u3); inner normal.
class RoundSphere : public ChartImpl<RoundSphere> {
 public:
  explicit RoundSphere(double r) : r_(r) {}
  std::string name() const override { return "round-sphere"; }
  template <typename S>
  Vec4<S> map(const Vec3<S>& u) const {
    using std::sqrt;
    S q = r_ * r_ - u.squaredNorm();
    return Vec4<S>(sqrt(q), u(0), u(1), u(2));
  }
  Eigen::Vector3d sample(std::mt19937_64& rng) const override;
  int orientation() const override { return -1; }
  double radius() const { return r_; }

 private:
  double r_;
};

/// M1 x (geodesic through the origin of M2): p = (u1, u2, u3, 0).
class SliceGeodesic : public ChartImpl<SliceGeodesic> {
 public:
  explicit SliceGeodesic(double half_width) : w_(half_width) {}
  std::string name() const override { return "slice-geodesic"; }
  template <typename S>
  Vec4<S> map(const Vec3<S>& u) const {
    return Vec4<S>(u(0), u(1), u(2), S(0.0));
  }
  Eigen::Vector3d sample(std::mt19937_64& rng) const override;

 private:
  double w_;
};

/// M1 x (coordinate circle of radius a in M2): p = (u1, u2, a cos u3, a sin u3); inner normal.
class SphereCircleTube : public ChartImpl<SphereCircleTube> {
 public:
  SphereCircleTube(double a, double half_width) : a_(a), w_(half_width) {}
  std::string name() const override { return "sphere-circle-tube"; }
  template <typename S>
  Vec4<S> map(const Vec3<S>& u) const {
    using std::cos;
    using std::sin;
    return Vec4<S>(u(0), u(1), a_ * cos(u(2)), a_ * sin(u(2)));
  }
  Eigen::Vector3d sample(std::mt19937_64& rng) const override;
  int orientation() const override { return -1; }

 private:
  double a_, w_;
};

/// p = (x, y, z, expr(x, y, z)).
class GraphChart : public ChartImpl<GraphChart> {
 public:
  GraphChart(Expression e, double half_width) : e_(std::move(e)), w_(half_width) {}
  std::string name() const override { return "graph"; }
  template <typename S>
  Vec4<S> map(const Vec3<S>& u) const {
    return Vec4<S>(u(0), u(1), u(2), e_.eval<S>(u(0), u(1), u(2)));
  }
  Eigen::Vector3d sample(std::mt19937_64& rng) const override;
  const Expression& expression() const { return e_; }

 private:
  Expression e_;
  double w_;
};

struct CatalogEntry {
  std::string key;
  std::string summary;
  std::vector<std::string> params;
};

const std::vector<CatalogEntry>& catalog_entries();

/// Builds a chart from a catalog key; validates parameters against the product's chart domains.
std::unique_ptr<HypersurfaceChart> make_chart(const std::string& key, const Params& params,
                                              const ProductModel& product);

}  // namespace spinlab
