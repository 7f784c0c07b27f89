#include "liebcheck/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "liebcheck/divergence.hpp"
#include "liebcheck/matrix_io.hpp"
#include "liebcheck/report.hpp"
#include "liebcheck/variational.hpp"

namespace liebcheck::cli {

namespace {

constexpr Index kMaxDim = 64;
constexpr Index kMaxPartialMaxDim = 16;
constexpr int kPartialMaxDefaultTrials = 50;
constexpr double kPartialMaxDefaultTol = 1e-8;

const std::vector<std::pair<std::string, Suite>>& suite_names() {
  static const std::vector<std::pair<std::string, Suite>> names{
      {"klein", Suite::klein},         {"joint-convexity", Suite::joint_convexity},
      {"lieb-concavity", Suite::lieb_concavity}, {"partial-max", Suite::partial_max},
      {"fenchel", Suite::fenchel},     {"variational", Suite::variational},
      {"all", Suite::all}};
  return names;
}

bool selected(Suite chosen, Suite s) { return chosen == Suite::all || chosen == s; }

void print_summary(std::ostream& os, const SuiteReport& r) {
  os << std::left << std::setw(18) << r.suite_name << (r.pass ? "PASS" : "FAIL")
     << "  max_violation=" << std::setprecision(6) << r.max_violation << "  tol=" << r.config.tol
     << "  records=" << r.trials.size() << "  invalid=" << r.invalid_trials << "\n";
  for (const auto& c : r.checks) {
    if (!c.pass) os << "    check " << c.name << " failed: " << c.detail << " (worst " << c.worst << ")\n";
  }
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::vector<SuiteReport> reports = run_suites(cfg);
  const nlohmann::json report = build_run_report(reports, cfg.to_json());
  const bool all_pass = report.at("summary").at("all_pass").get<bool>();

  std::ostream& log = cfg.out_path ? out : err;
  for (const auto& r : reports) print_summary(log, r);
  log << (all_pass ? "all suites passed" : "violations found") << "\n";

  if (cfg.out_path) {
    write_report(report, *cfg.out_path);
  } else {
    out << canonical_dump(report);
  }
  return all_pass ? kExitPass : kExitViolation;
}

struct EvalPaths {
  std::string op;
  std::optional<std::string> h;
  std::optional<std::string> a;
  std::optional<std::string> x;
};

const std::string& require(const std::optional<std::string>& path, const char* flag, const std::string& op) {
  if (!path) throw std::invalid_argument("eval " + op + " requires " + flag);
  return *path;
}

PdMatrix read_pd(const std::string& path) {
  const HermitianMatrix m = read_matrix(path);
  try {
    return PdMatrix(m);
  } catch (const DomainError& e) {
    throw DomainError(path + ": " + e.what());
  }
}

void require_dims(const HermitianMatrix& a, const std::string& a_path, const HermitianMatrix& b,
                  const std::string& b_path) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << "dimension mismatch: " << a_path << " is " << a.dim() << "x" << a.dim() << ", " << b_path
       << " is " << b.dim() << "x" << b.dim();
    throw DimMismatch(os.str());
  }
}

double cmd_eval(const EvalPaths& p) {
  const std::string& a_path = require(p.a, "--a", p.op);
  const PdMatrix a = read_pd(a_path);
  if (p.op == "entropy") return entropy(a);
  if (p.op == "trexplog") {
    const std::string& h_path = require(p.h, "--h", p.op);
    const HermitianMatrix h = read_matrix(h_path);
    require_dims(h, h_path, a, a_path);
    return trace_exp_log(h, a);
  }
  const std::string& x_path = require(p.x, "--x", p.op);
  const PdMatrix x = read_pd(x_path);
  require_dims(x, x_path, a, a_path);
  if (p.op == "relent") return relative_entropy(x, a).value;
  // objective: the bracket tr(XH) - D(X;A) + tr A when H is given, the trace
  // formula objective tr(X log A - X log X + X) otherwise.
  if (p.h) {
    const HermitianMatrix h = read_matrix(*p.h);
    require_dims(h, *p.h, a, a_path);
    return lieb_objective(x, h, a);
  }
  return variational_objective(x, a);
}

int cmd_check_report(const std::string& path, std::ostream& out) {
  std::ifstream in(path);
  if (!in) throw IoError(path + ": cannot open for reading");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  const ReportVerdict v = evaluate_report(j);
  if (v.all_pass) {
    out << "report passes\n";
    return kExitPass;
  }
  out << "report has violations in:";
  for (const auto& name : v.failing) out << " " << name;
  out << "\n";
  return kExitViolation;
}

}  // namespace

std::optional<Suite> parse_suite(const std::string& name) {
  for (const auto& [n, s] : suite_names())
    if (n == name) return s;
  return std::nullopt;
}

std::string to_string(Suite s) {
  for (const auto& [n, v] : suite_names())
    if (v == s) return n;
  return "unknown";
}

void RunConfig::validate() const {
  if (dim < 1 || dim > kMaxDim) {
    throw std::invalid_argument("--dim must lie in [1, 64], got " + std::to_string(dim));
  }
  if (suite == Suite::partial_max && dim > kMaxPartialMaxDim) {
    throw std::invalid_argument("--suite partial-max supports --dim up to 16, got " + std::to_string(dim));
  }
  if (trials < 1) throw std::invalid_argument("--trials must be >= 1, got " + std::to_string(trials));
  if (!(tol > 0.0)) throw std::invalid_argument("--tol must be > 0");
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j = {{"suite", cli::to_string(suite)},
                      {"dim", dim},
                      {"seed", seed},
                      {"trials", trials},
                      {"tol", tol},
                      {"flip_orientation", flip_orientation}};
  return j;
}

std::vector<SuiteReport> run_suites(const RunConfig& cfg) {
  cfg.validate();
  const SuiteConfig base{cfg.dim, cfg.trials, cfg.seed, cfg.tol};
  const auto segment = [&](Orientation o) { return cfg.flip_orientation ? flipped(o) : o; };

  std::vector<SuiteReport> reports;
  if (selected(cfg.suite, Suite::klein)) reports.push_back(klein_suite(base));
  if (selected(cfg.suite, Suite::joint_convexity))
    reports.push_back(joint_convexity_suite(base, segment(Orientation::convex)));
  if (selected(cfg.suite, Suite::lieb_concavity))
    reports.push_back(lieb_concavity_suite(base, segment(Orientation::concave)));
  if (selected(cfg.suite, Suite::partial_max)) {
    SuiteConfig pm = base;
    pm.dim = std::min(cfg.dim, kMaxPartialMaxDim);
    if (!cfg.trials_given) pm.trials = kPartialMaxDefaultTrials;
    if (!cfg.tol_given) pm.tol = kPartialMaxDefaultTol;
    reports.push_back(partial_max_concavity_suite(pm, segment(Orientation::concave)));
  }
  if (selected(cfg.suite, Suite::fenchel))
    reports.push_back(fenchel_convexity_suite(base, segment(Orientation::convex)));
  if (selected(cfg.suite, Suite::variational)) {
    reports.push_back(variational_suite(base));
    reports.push_back(lieb_variational_suite(base));
  }
  return reports;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical certification of trace inequalities around tr exp(H + log A)", "liebcheck"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "Print this help message and exit");

  RunConfig cfg;
  std::string suite_name = "all";
  CLI::App* verify = app.add_subcommand("verify", "Run property suites and write a JSON report");
  verify->set_help_flag("--help", "Print this help message and exit");
  verify->add_option("--suite", suite_name, "klein | joint-convexity | lieb-concavity | partial-max | fenchel | variational | all");
  verify->add_option("--dim", cfg.dim, "Matrix dimension (1..64)");
  CLI::Option* trials_opt = verify->add_option("--trials", cfg.trials, "Trials per suite");
  verify->add_option("--seed", cfg.seed, "Master seed");
  CLI::Option* tol_opt = verify->add_option("--tol", cfg.tol, "Violation tolerance");
  verify->add_option("--out", cfg.out_path, "Report path (default: stdout)");
  verify->add_flag("--flip-orientation", cfg.flip_orientation,
                   "Reverse the claimed inequality of the segment suites (harness self-test)");

  EvalPaths eval_paths;
  CLI::App* eval = app.add_subcommand("eval", "Evaluate one quantity on matrix files");
  eval->set_help_flag("--help", "Print this help message and exit");
  eval->add_option("op", eval_paths.op, "trexplog | relent | entropy | objective")
      ->required()
      ->check(CLI::IsMember({"trexplog", "relent", "entropy", "objective"}));
  eval->add_option("--h", eval_paths.h, "Self-adjoint H");
  eval->add_option("--a", eval_paths.a, "Positive-definite A (Y for relent/objective)");
  eval->add_option("--x", eval_paths.x, "Positive-definite X");

  std::string report_path;
  CLI::App* check = app.add_subcommand("check-report", "Recompute the verdict of a saved report");
  check->set_help_flag("--help", "Print this help message and exit");
  check->add_option("report", report_path, "Report JSON file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "liebcheck: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (verify->parsed()) {
      const auto suite = parse_suite(suite_name);
      if (!suite) {
        err << "liebcheck: unknown suite '" << suite_name << "'\n";
        return kExitUsage;
      }
      cfg.suite = *suite;
      cfg.trials_given = trials_opt->count() > 0;
      cfg.tol_given = tol_opt->count() > 0;
      try {
        cfg.validate();
      } catch (const std::invalid_argument& e) {
        err << "liebcheck: " << e.what() << "\n";
        return kExitUsage;
      }
      return cmd_verify(cfg, out, err);
    }
    if (eval->parsed()) {
      const double v = cmd_eval(eval_paths);
      out << std::setprecision(17) << v << "\n";
      return kExitPass;
    }
    if (check->parsed()) return cmd_check_report(report_path, out);
  } catch (const std::invalid_argument& e) {
    err << "liebcheck: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "liebcheck: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace liebcheck::cli
