#pragma once

#include "wavequbo/harness.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace wavequbo {

enum class ReportFormat { Csv, Json };

ReportFormat parse_report_format(std::string_view name);  // "csv" | "json"

/// Shortest decimal that parses back to the same double.
std::string format_number(double v);

/// Identification columns, then rank, DR, g_min, SR_sa, MSE_sa, MSE_best,
/// then bookkeeping. Missing values are empty (CSV) or null (JSON). Wall
/// time is appended only on request so that reruns stay byte-identical.
void emit_report(std::ostream& out, const std::vector<ExperimentReport>& reports, ReportFormat format,
                 bool include_timing = false);
void emit_report(const std::string& path, const std::vector<ExperimentReport>& reports, ReportFormat format,
                 bool include_timing = false);

}  // namespace wavequbo
