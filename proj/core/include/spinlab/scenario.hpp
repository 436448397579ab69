#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spinlab/report.hpp"

namespace spinlab {

/// Scenario files are JSON objects:
///   {"name": "...", "c1": 1.0, "c2": -0.5, "pairing": "anti-first",
///    "hypersurface": {"key": "graph", "params": {"expr": "0.2*x*y", "box": 0.5}},
///    "samples": 20, "seed": 7, "tolerances": {"curvature.gauss": 1e-6},
///    "checks": ["curvature.gauss"], "umbilic_scan": 0}
/// Only "name", "c1", "c2" and "hypersurface" are required. Unknown keys are rejected.
Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::string& path);
std::string scenario_to_json(const Scenario& s);

/// Throws ConfigError naming the first offending field.
void validate_scenario(const Scenario& s);

std::vector<Scenario> builtin_scenarios();

/// threads = 0 uses the hardware concurrency. The report does not depend on the thread count.
ResidualReport run_scenario(const Scenario& s, int threads = 0);
ResidualReport run_scenario_file(const std::string& path, int threads = 0);
std::vector<ResidualReport> run_catalog(std::optional<Pairing> pairing = std::nullopt, int threads = 0);

/// 0 if every report passes, 1 otherwise.
int exit_code(const std::vector<ResidualReport>& reports);

}  // namespace spinlab
