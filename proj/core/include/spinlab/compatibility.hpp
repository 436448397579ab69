#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "spinlab/hypersurface.hpp"
#include "spinlab/induced_spinc.hpp"
#include "spinlab/report.hpp"

namespace spinlab {

/// max_a |nabla_{e_a} xi - Chi E e_a|.
double nabla_xi_residual(const InducedPointData& d);

/// The twelve scalar equations of System j, as LHS - RHS in the order they are displayed:
/// for X = e1, e2, xi the three components along gamma_j(e_1..e_3) phi_j, then the
/// component along phi_j.
struct SystemResiduals {
  int tag = 1;
  ResidualBundle residuals;  // signed values; max() uses magnitudes
  double max() const;
};

const std::array<std::string, 12>& system_equation_names(int tag);

/// Omega is Omega_j(e_a, e_b) in the adapted frame, the hypothesis of System j.
SystemResiduals system_residuals(int tag, const InducedPointData& d, const Eigen::Matrix3d& Omega);
/// Uses the closed form of Omega_j for the product.
SystemResiduals system_residuals(int tag, const InducedPointData& d, const ProductModel& product);

/// The quadratic E-terms of System j for X = e_x: tr(E) E - E^2 written out per component.
Eigen::Vector3d system_quadratic_terms(const Eigen::Matrix3d& E, int x);

/// Per-point inputs of the Gauss <=> Codazzi verdict.
struct EquivalencePoint {
  double system = 0.0;      // max |System j residual|
  double gauss = 0.0;
  double codazzi = 0.0;
  double hypothesis = 0.0;  // |Omega supplied - closed form|
};

EquivalencePoint equivalence_point(int tag, const InducedPointData& d, const ProductModel& product,
                                   const Eigen::Matrix3d& Omega);

struct EquivalenceVerdict {
  int tag = 1;
  int points = 0;
  int skipped = 0;            // Omega_j hypothesis fails
  int forward_tested = 0;     // System and Gauss hold
  int forward_confirmed = 0;  // ... and Codazzi holds
  int backward_tested = 0;    // System and Codazzi hold
  int backward_confirmed = 0; // ... and Gauss holds
  int covanishing = 0;        // Gauss and Codazzi hold or fail together
  double max_gauss = 0.0, max_codazzi = 0.0, max_system = 0.0;
  double max_implied = 0.0;   // largest implied residual over tested implications
  std::vector<int> counterexamples;

  bool confirmed() const { return counterexamples.empty(); }
  bool all_covanish() const { return covanishing == points - skipped; }
};

EquivalenceVerdict gauss_iff_codazzi(int tag, const std::vector<EquivalencePoint>& ensemble, double tol,
                                     double hypothesis_tol = 1e-6);

/// Perturbation used by the negative controls: E + 0.1 w w^T with w a random unit vector,
/// constant in the adapted frame.
ShapeModifier rank_one_perturbation(std::mt19937_64& rng, double amount = 0.1);

/// Forward-direction residuals at one point for the two restricted structures.
struct ForwardPoint {
  std::array<double, 2> killing{}, algebraic{}, omega{};
  double omega_size = 0.0;  // max |Omega_j| entry
};
inline constexpr const char* kSpinCaseNote =
    "spin case: c1 = c2 = 0, Omega_1 = Omega_2 = 0 and the two induced structures coincide";
ForwardPoint forward_point(const InducedPointData& d, const InducedSpinc& sp1, const InducedSpinc& sp2);

/// Immersion => two generalized Killing spinors with the algebraic conditions and the
/// closed-form auxiliary curvatures. Records: forward.killing, forward.algebraic, forward.omega.
ResidualReport theorem_forward_check(const HypersurfaceChart& chart, const ProductModel& product,
                                     const std::vector<Eigen::Vector3d>& points,
                                     const std::map<std::string, double>& tolerances = {},
                                     bool flip_orientation = false);

/// Abstract data (g, E, Chi, xi, V, h, f) on a coordinate chart; tensors in coordinate
/// components, eta = g(xi, .).
template <typename S>
struct CompatibilityFields {
  Mat3<S> E, chi, f;
  Vec3<S> xi, V;
  S h;
};

class CompatibilityData {
 public:
  virtual ~CompatibilityData() = default;
  virtual Mat3<D2> metric(const Vec3<D2>& u) const = 0;
  virtual CompatibilityFields<double> fields(const Vec3<double>& u) const = 0;
  virtual CompatibilityFields<D1> fields(const Vec3<D1>& u) const = 0;
};

/// Single-field corruptions of harvested data.
struct Corruption {
  enum class Field { None, E, H, V, F };
  Field field = Field::None;
  double amount = 0.0;  // E: scale factor; h: shift; V: rotation angle about xi; f: + amount Id
};

const char* corruption_name(Corruption::Field f);
/// The converse.* check a corruption of this field is designed to trip.
std::string corrupted_check(Corruption::Field f);

/// Fields read off an immersion and then treated as abstract data.
class HarvestedData : public CompatibilityData {
 public:
  HarvestedData(const HypersurfaceChart& chart, const ProductModel& product, Corruption c = {})
      : chart_(chart), product_(product), corruption_(c) {}
  Mat3<D2> metric(const Vec3<D2>& u) const override;
  CompatibilityFields<double> fields(const Vec3<double>& u) const override;
  CompatibilityFields<D1> fields(const Vec3<D1>& u) const override;

 private:
  template <typename S>
  CompatibilityFields<S> harvest(const Vec3<S>& u) const;
  const HypersurfaceChart& chart_;
  ProductModel product_;
  Corruption corruption_;
};

/// Everything the converse checks need at one point, in the adapted frame built from the data.
struct ConversePoint {
  InducedPointData d;          // f is the rebuilt f; only tensor fields are populated
  Eigen::Matrix3d f_supplied;  // frame components
};
ConversePoint converse_point(const CompatibilityData& data, const Eigen::Vector3d& u);

/// Named residuals at one point: converse.f_recipe, converse.f_squared, converse.fV, converse.h_V_norm,
/// converse.nabla_f, converse.nabla_V, converse.dh, converse.gauss,
/// converse.codazzi, converse.rank.
ResidualBundle converse_residuals(const ConversePoint& cp, const ProductModel& product);

ResidualReport theorem_converse_check(const CompatibilityData& data, const ProductModel& product,
                                      const std::vector<Eigen::Vector3d>& points,
                                      const std::map<std::string, double>& tolerances = {});

/// |E - H Id| in operator norm.
double umbilicity(const InducedPointData& d);
inline constexpr double kUmbilicThreshold = 1e-8;

struct UmbilicResult {
  int scanned = 0;
  int umbilic = 0;
  double identity = 0.0;   // max |4|dH| - |V||c1 - c2||
  double dH_xi = 0.0;      // max |dH(xi)|
  double dH_frame = 0.0;   // max_i |dH(e_i) - (c1 - c2)/4 (V, e_i)|
  double min_umbilicity = 0.0;
  bool vacuous() const { return umbilic == 0; }
};

struct UmbilicPoint {
  double umbilicity = 0.0;
  bool umbilic = false;
  double identity = 0.0, dH_xi = 0.0, dH_frame = 0.0;  // filled when umbilic
};
UmbilicPoint umbilic_point(const InducedPointData& d, const ProductModel& product,
                           double threshold = kUmbilicThreshold);

UmbilicResult umbilic_mean_curvature_check(const HypersurfaceChart& chart, const ProductModel& product,
                                           const std::vector<Eigen::Vector3d>& points,
                                           double threshold = kUmbilicThreshold);

}  // namespace spinlab
