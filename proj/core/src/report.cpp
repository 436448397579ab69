#include "spinlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spinlab/errors.hpp"

namespace spinlab {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Skipped: return "skipped";
  }
  return "?";
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "pass") return Verdict::Pass;
  if (s == "fail") return Verdict::Fail;
  if (s == "skipped") return Verdict::Skipped;
  throw ConfigError("unknown verdict '" + s + "'");
}

void CheckRecord::add(double residual) {
  if (std::isnan(residual)) residual = std::numeric_limits<double>::infinity();
  max_residual = std::max(max_residual, residual);
  ++points_evaluated;
}

void CheckRecord::skip(const std::string& reason) {
  ++points_skipped;
  if (std::find(skip_reasons.begin(), skip_reasons.end(), reason) == skip_reasons.end())
    skip_reasons.push_back(reason);
}

void CheckRecord::metric_max(const std::string& key, double value) {
  if (std::isnan(value)) value = std::numeric_limits<double>::infinity();
  auto [it, fresh] = metrics.emplace(key, value);
  if (!fresh) it->second = std::max(it->second, value);
}

void CheckRecord::metric_min(const std::string& key, double value) {
  if (std::isnan(value)) value = -std::numeric_limits<double>::infinity();
  auto [it, fresh] = metrics.emplace(key, value);
  if (!fresh) it->second = std::min(it->second, value);
}

void CheckRecord::metric_add(const std::string& key, double value) { metrics[key] += value; }

void CheckRecord::note(const std::string& text) {
  if (std::find(notes.begin(), notes.end(), text) == notes.end()) notes.push_back(text);
}

void CheckRecord::finalize() {
  if (points_evaluated == 0)
    verdict = Verdict::Skipped;
  else
    verdict = max_residual < tolerance ? Verdict::Pass : Verdict::Fail;
}

void ResidualReport::finalize() {
  overall = Verdict::Pass;
  for (const auto& c : checks)
    if (c.verdict == Verdict::Fail) overall = Verdict::Fail;
}

const CheckRecord* ResidualReport::find(const std::string& id) const {
  for (const auto& c : checks)
    if (c.id == id) return &c;
  return nullptr;
}

}  // namespace spinlab
