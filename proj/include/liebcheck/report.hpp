#pragma once

#include <filesystem>
#include <vector>

#include <json.hpp>

#include "liebcheck/convexity.hpp"

namespace liebcheck {

nlohmann::json to_json(const SegmentTrial& trial);
nlohmann::json to_json(const SideCheck& check);
nlohmann::json to_json(const SuiteReport& report);

/// Top-level report: {"reports": [...], "summary": {suites_run, all_pass,
/// versions, config}}. `config` is echoed verbatim.
nlohmann::json build_run_report(const std::vector<SuiteReport>& reports, const nlohmann::json& config);

void write_report(const nlohmann::json& report, const std::filesystem::path& path);

struct ReportVerdict {
  bool all_pass = false;
  /// Suites whose recomputed verdict is a failure.
  std::vector<std::string> failing;
};

/// Re-derives every suite verdict from its trial violations, side-check flags
/// and echoed tolerance; the suite-level pass flags and the summary are not
/// consulted. Throws
/// ParseError for documents that do not follow the report layout.
ReportVerdict evaluate_report(const nlohmann::json& report);

}  // namespace liebcheck
