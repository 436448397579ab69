#pragma once

#include <map>
#include <string>
#include <vector>

#include "spinlab/report.hpp"

namespace spinlab {

/// Registered check: stable id, human-readable anchor to the statement it verifies,
/// and the default tolerance.
struct CheckInfo {
  std::string id;
  std::string anchor;
  double tolerance;
};

const std::vector<CheckInfo>& check_registry();
bool is_registered(const std::string& id);
/// Throws ConfigError for unknown ids.
const CheckInfo& check_info(const std::string& id);

/// Multiplier from SPINLAB_TOL_SCALE (1 if unset). Throws ConfigError on a bad value.
double tolerance_scale();
/// Override if present, else the registry default; multiplied by tolerance_scale().
double effective_tolerance(const std::string& id, const std::map<std::string, double>& overrides = {});
/// Empty record with id, anchor and effective tolerance filled in.
CheckRecord make_record(const std::string& id, const std::map<std::string, double>& overrides = {});

}  // namespace spinlab
