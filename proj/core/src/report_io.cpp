#include "spinlab/report_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "json_io.hpp"
#include "spinlab/errors.hpp"

namespace spinlab {

using detail::json;
using detail::number_from_json;
using detail::number_json;

ReportFormat parse_format(const std::string& s) {
  if (s == "json") return ReportFormat::Json;
  if (s == "csv") return ReportFormat::Csv;
  if (s == "text") return ReportFormat::Text;
  throw ConfigError("format must be json, csv or text, got '" + s + "'");
}

namespace {

json record_json(const CheckRecord& c) {
  json metrics = json::object();
  for (const auto& [k, v] : c.metrics) metrics[k] = number_json(v);
  json per_point = json::array();
  for (double v : c.per_point) per_point.push_back(number_json(v));
  return {{"id", c.id},
          {"anchor", c.anchor},
          {"max_residual", number_json(c.max_residual)},
          {"tolerance", number_json(c.tolerance)},
          {"verdict", to_string(c.verdict)},
          {"points_evaluated", c.points_evaluated},
          {"points_skipped", c.points_skipped},
          {"skip_reasons", c.skip_reasons},
          {"metrics", metrics},
          {"per_point", per_point},
          {"notes", c.notes}};
}

json report_json(const ResidualReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(record_json(c));
  return {{"schema", kReportSchema},
          {"scenario", detail::scenario_json(r.scenario)},
          {"overall", to_string(r.overall)},
          {"runtime_seconds", number_json(r.runtime_seconds)},
          {"warnings", r.warnings},
          {"checks", checks}};
}

CheckRecord record_from(const json& j) {
  CheckRecord c;
  c.id = j.at("id").get<std::string>();
  c.anchor = j.at("anchor").get<std::string>();
  c.max_residual = number_from_json(j.at("max_residual"), "max_residual");
  c.tolerance = number_from_json(j.at("tolerance"), "tolerance");
  c.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  c.points_evaluated = j.at("points_evaluated").get<int>();
  c.points_skipped = j.at("points_skipped").get<int>();
  c.skip_reasons = j.at("skip_reasons").get<std::vector<std::string>>();
  for (const auto& [k, v] : j.at("metrics").items()) c.metrics[k] = number_from_json(v, "metric " + k);
  for (const auto& v : j.at("per_point")) c.per_point.push_back(number_from_json(v, "per_point"));
  c.notes = j.at("notes").get<std::vector<std::string>>();
  return c;
}

ResidualReport report_from(const json& j) {
  if (j.value("schema", "") != kReportSchema) throw ConfigError("not a spinlab report (schema mismatch)");
  ResidualReport r;
  r.scenario = detail::scenario_from_json(j.at("scenario"));
  r.overall = verdict_from_string(j.at("overall").get<std::string>());
  r.runtime_seconds = number_from_json(j.at("runtime_seconds"), "runtime_seconds");
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  for (const auto& c : j.at("checks")) r.checks.push_back(record_from(c));
  return r;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("report is not valid JSON: ") + e.what());
  }
}

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string short_num(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << v;
  return os.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string joined(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : "; ") + s;
  return out;
}

const char* kCsvHeader =
    "scenario,check,verdict,max_residual,tolerance,points_evaluated,points_skipped,anchor,skip_reasons,notes\n";

void csv_rows(std::ostringstream& os, const ResidualReport& r) {
  for (const auto& c : r.checks) {
    os << csv_field(r.scenario.name) << ',' << c.id << ',' << to_string(c.verdict) << ',' << num(c.max_residual) << ','
       << num(c.tolerance) << ',' << c.points_evaluated << ',' << c.points_skipped << ',' << csv_field(c.anchor) << ','
       << csv_field(joined(c.skip_reasons)) << ',' << csv_field(joined(c.notes)) << '\n';
  }
}

std::string upper(const char* s) {
  std::string out(s);
  for (char& ch : out) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return out;
}

void text_report(std::ostringstream& os, const ResidualReport& r) {
  const Scenario& s = r.scenario;
  os << "scenario " << s.name << ": " << s.hypersurface;
  if (!s.params.empty()) {
    os << '(';
    bool first = true;
    for (const auto& [k, v] : s.params) {
      os << (first ? "" : ", ") << k << '=';
      if (const double* x = std::get_if<double>(&v)) os << *x;
      else os << std::get<std::string>(v);
      first = false;
    }
    os << ')';
  }
  os << " in M1(" << s.c1 << ") x M2(" << s.c2 << "), pairing " << to_string(s.pairing) << ", " << s.samples
     << " samples, seed " << s.seed << "\n";
  for (const auto& w : r.warnings) os << "  warning: " << w << "\n";
  for (const auto& c : r.checks) {
    os << "  " << std::left << std::setw(8) << upper(to_string(c.verdict)) << std::setw(32) << c.id << " max "
       << std::setw(10) << short_num(c.max_residual) << " tol " << std::setw(8) << short_num(c.tolerance) << " ("
       << c.points_evaluated << " pts";
    if (c.points_skipped) os << ", " << c.points_skipped << " skipped";
    os << ")\n";
    if (c.verdict == Verdict::Fail) os << "      anchor: " << c.anchor << "\n";
    for (const auto& n : c.notes) os << "      note: " << n << "\n";
  }
  os << "  overall: " << upper(to_string(r.overall)) << "  (" << std::fixed << std::setprecision(2)
     << r.runtime_seconds << " s)\n";
  os.unsetf(std::ios::fixed);
}

}  // namespace

std::string emit_report(const ResidualReport& r, ReportFormat fmt) {
  std::ostringstream os;
  switch (fmt) {
    case ReportFormat::Json: return report_json(r).dump(2) + "\n";
    case ReportFormat::Csv:
      os << kCsvHeader;
      csv_rows(os, r);
      break;
    case ReportFormat::Text: text_report(os, r); break;
  }
  return os.str();
}

std::string emit_reports(const std::vector<ResidualReport>& rs, ReportFormat fmt) {
  std::ostringstream os;
  bool pass = true;
  for (const auto& r : rs) pass = pass && r.overall != Verdict::Fail;
  switch (fmt) {
    case ReportFormat::Json: {
      json reports = json::array();
      for (const auto& r : rs) reports.push_back(report_json(r));
      json j = {{"schema", kCatalogSchema}, {"overall", pass ? "pass" : "fail"}, {"reports", reports}};
      return j.dump(2) + "\n";
    }
    case ReportFormat::Csv:
      os << kCsvHeader;
      for (const auto& r : rs) csv_rows(os, r);
      break;
    case ReportFormat::Text:
      for (const auto& r : rs) text_report(os, r);
      os << "catalog: " << rs.size() << " scenarios, overall " << (pass ? "PASS" : "FAIL") << "\n";
      break;
  }
  return os.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

ResidualReport report_from_json(const std::string& text) {
  try {
    return report_from(parse_json(text));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed report: ") + e.what());
  }
}

std::vector<ResidualReport> reports_from_json(const std::string& text) {
  json j = parse_json(text);
  try {
    if (j.value("schema", "") == kReportSchema) return {report_from(j)};
    if (j.value("schema", "") != kCatalogSchema) throw ConfigError("not a spinlab catalog (schema mismatch)");
    std::vector<ResidualReport> out;
    for (const auto& r : j.at("reports")) out.push_back(report_from(r));
    return out;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed report: ") + e.what());
  }
}

}  // namespace spinlab
