#pragma once
// Private JSON helpers shared by scenario.cpp and report_io.cpp.

#ifdef SPINLAB_VENDORED_JSON
#include "json.hpp"
#else
#include <nlohmann/json.hpp>
#endif

#include "spinlab/report.hpp"

namespace spinlab::detail {

using json = nlohmann::json;

json scenario_json(const Scenario& s);
/// Strict: unknown keys and wrong types raise ConfigError.
Scenario scenario_from_json(const json& j);

/// Non-finite values are written as the strings "inf", "-inf", "nan".
json number_json(double v);
double number_from_json(const json& j, const std::string& what);

}  // namespace spinlab::detail
