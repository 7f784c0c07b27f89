#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "liebcheck/convexity.hpp"

namespace liebcheck::cli {

enum class Suite { klein, joint_convexity, lieb_concavity, partial_max, fenchel, variational, all };

std::optional<Suite> parse_suite(const std::string& name);
std::string to_string(Suite s);

inline constexpr int kExitPass = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  Suite suite = Suite::all;
  Index dim = 6;
  int trials = 200;
  std::uint64_t seed = 42;
  double tol = 1e-9;
  std::optional<std::string> out_path;
  /// Run the segment suites with the claimed inequality reversed; a correct
  /// harness must then report violations.
  bool flip_orientation = false;
  /// Whether trials / tol were given explicitly. When not, partial-max uses
  /// its own defaults (50 trials, tol 1e-8).
  bool trials_given = false;
  bool tol_given = false;

  /// Throws std::invalid_argument for out-of-range settings.
  void validate() const;
  nlohmann::json to_json() const;
};

std::vector<SuiteReport> run_suites(const RunConfig& cfg);

/// Entry point shared by the executable and the tests. Returns the process
/// exit status: 0 pass, 1 violation found, 2 usage / config / parse error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace liebcheck::cli
