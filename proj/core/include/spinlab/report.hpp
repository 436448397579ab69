#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "spinlab/catalog.hpp"
#include "spinlab/space_forms.hpp"

namespace spinlab {

enum class Verdict { Pass, Fail, Skipped };

const char* to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

/// "anti-first" / "anti-second".
const char* to_string(Pairing p);
Pairing pairing_from_string(const std::string& s);

struct Scenario {
  std::string name;
  double c1 = 0.0, c2 = 0.0;
  Pairing pairing = Pairing::AntiFirst;
  std::string hypersurface;  // catalog key
  Params params;
  int samples = 20;
  std::uint64_t seed = 1;
  std::map<std::string, double> tolerances;  // per-check overrides
  std::vector<std::string> checks;           // empty + checks_given = run nothing
  bool checks_given = false;                 // false: run every registered check
  int umbilic_scan = 0;                      // extra random points scanned for umbilics

  bool operator==(const Scenario&) const = default;
};

/// One check aggregated over the sampled points.
struct CheckRecord {
  std::string id;
  std::string anchor;
  double max_residual = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::Skipped;
  int points_evaluated = 0;
  int points_skipped = 0;
  std::vector<std::string> skip_reasons;   // distinct
  std::map<std::string, double> metrics;   // named sub-residuals and diagnostics
  std::vector<double> per_point;           // check-specific per-point value (shape.operator: H)
  std::vector<std::string> notes;

  /// Records one evaluated residual; NaN counts as +inf.
  void add(double residual);
  void skip(const std::string& reason);
  /// Keeps the largest value seen for a named metric.
  void metric_max(const std::string& key, double value);
  void metric_min(const std::string& key, double value);
  void metric_add(const std::string& key, double value);
  void note(const std::string& text);  // appended once
  /// Pass iff at least one point was evaluated and max_residual < tolerance.
  void finalize();

  bool operator==(const CheckRecord&) const = default;
};

struct ResidualReport {
  Scenario scenario;
  std::vector<CheckRecord> checks;
  Verdict overall = Verdict::Pass;
  double runtime_seconds = 0.0;
  std::vector<std::string> warnings;

  /// Overall verdict: pass iff every non-skipped check passes.
  void finalize();
  const CheckRecord* find(const std::string& id) const;

  bool operator==(const ResidualReport&) const = default;
};

}  // namespace spinlab
