#include "liebcheck/report.hpp"

#include <Eigen/Core>

#include "liebcheck/matrix_io.hpp"

#ifndef LIEBCHECK_VERSION
#define LIEBCHECK_VERSION "unknown"
#endif

namespace liebcheck {

using nlohmann::json;

json to_json(const SegmentTrial& trial) {
  json j = {{"trial", trial.trial},
            {"t", trial.t ? json(*trial.t) : json(nullptr)},
            {"lhs", trial.lhs},
            {"rhs", trial.rhs},
            {"violation", trial.violation},
            {"scale", trial.scale}};
  if (!trial.counterexample.empty()) {
    json ce = json::object();
    for (const auto& [name, m] : trial.counterexample) ce[name] = matrix_to_json(m);
    j["counterexample"] = std::move(ce);
  }
  return j;
}

json to_json(const SideCheck& check) {
  return {{"name", check.name}, {"pass", check.pass}, {"worst", check.worst}, {"detail", check.detail}};
}

json to_json(const SuiteReport& report) {
  json trials = json::array();
  for (const auto& t : report.trials) trials.push_back(to_json(t));
  json checks = json::array();
  for (const auto& c : report.checks) checks.push_back(to_json(c));
  return {{"suite_name", report.suite_name},
          {"trials", std::move(trials)},
          {"max_violation", report.max_violation},
          {"pass", report.pass},
          {"invalid_trials", report.invalid_trials},
          {"checks", std::move(checks)},
          {"config_echo",
           {{"dim", report.config.dim},
            {"trials", report.config.trials},
            {"seed", report.config.seed},
            {"tol", report.config.tol}}}};
}

json build_run_report(const std::vector<SuiteReport>& reports, const json& config) {
  json suites = json::array();
  json names = json::array();
  bool all_pass = true;
  for (const auto& r : reports) {
    suites.push_back(to_json(r));
    names.push_back(r.suite_name);
    all_pass = all_pass && r.pass;
  }
  const std::string eigen_version = std::to_string(EIGEN_WORLD_VERSION) + "." +
                                    std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                    std::to_string(EIGEN_MINOR_VERSION);
  return {{"reports", std::move(suites)},
          {"summary",
           {{"suites_run", std::move(names)},
            {"all_pass", all_pass},
            {"versions", {{"liebcheck", LIEBCHECK_VERSION}, {"eigen", eigen_version}}},
            {"config", config}}}};
}

void write_report(const json& report, const std::filesystem::path& path) {
  write_text_atomic(path, canonical_dump(report));
}

ReportVerdict evaluate_report(const json& report) {
  ReportVerdict verdict;
  try {
    const json& suites = report.at("reports");
    if (!suites.is_array() || suites.empty()) throw ParseError("report: \"reports\" must be a nonempty array");
    verdict.all_pass = true;
    for (const json& s : suites) {
      const double tol = s.at("config_echo").at("tol").get<double>();
      bool pass = true;
      for (const json& t : s.at("trials")) {
        const json& v = t.at("violation");
        // null stands for a NaN violation.
        if (v.is_null() || !(v.get<double>() <= tol)) pass = false;
      }
      for (const json& c : s.at("checks")) pass = pass && c.at("pass").get<bool>();
      if (!pass) {
        verdict.all_pass = false;
        verdict.failing.push_back(s.at("suite_name").get<std::string>());
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
  return verdict;
}

}  // namespace liebcheck
