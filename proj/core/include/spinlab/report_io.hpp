#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "spinlab/report.hpp"

namespace spinlab {

enum class ReportFormat { Json, Csv, Text };

ReportFormat parse_format(const std::string& s);

/// Schema tags written into every JSON document.
inline constexpr const char* kReportSchema = "spinlab.report/1";
inline constexpr const char* kCatalogSchema = "spinlab.catalog/1";

/// JSON: one report object. CSV: header plus one row per check. Text: summary with the
/// anchor of every failing check.
std::string emit_report(const ResidualReport& r, ReportFormat fmt);
/// JSON: {"schema", "overall", "reports": [...]}. CSV: one header, rows of every report.
std::string emit_reports(const std::vector<ResidualReport>& rs, ReportFormat fmt);

/// "" or "-" writes to stdout. Throws IoError if the file cannot be written.
void write_output(const std::string& path, const std::string& text);

ResidualReport report_from_json(const std::string& text);
std::vector<ResidualReport> reports_from_json(const std::string& text);

}  // namespace spinlab
