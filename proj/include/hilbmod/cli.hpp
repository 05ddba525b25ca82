#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hilbmod/common.hpp"
#include "hilbmod/schatten.hpp"

namespace hilbmod {

/// Everything one command-line run needs. Optional fields left empty take
/// the experiment defaults.
struct RunConfig {
  std::string experiment;
  std::optional<std::string> family;
  std::optional<int> m, k, N, blocks, trials;
  std::vector<int> nValues, degrees;
  std::vector<double> deltas, pValues;
  std::vector<std::string> generators;
  std::vector<std::vector<Scalar>> points;
  std::optional<double> zeroSetDimension;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  ConvergenceThresholds thresholds;
  double fitBegin = FitWindow{}.begin;
  double fitEnd = FitWindow{}.end;
  std::optional<std::string> outputRoot;
  std::optional<std::string> tag;

  bool operator==(const RunConfig&) const = default;
};

inline constexpr const char* kOutputRootEnv = "HILBMOD_OUT";

/// Thrown by parse_args: code 0 for --help output, 2 for usage errors.
class CliExit : public std::runtime_error {
 public:
  CliExit(int code, const std::string& text) : std::runtime_error(text), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

/// args[0] is the subcommand (no program name).
RunConfig parse_args(const std::vector<std::string>& args);

/// "key = value" lines, starting with "experiment = ...".
std::string config_text(const RunConfig& config);
RunConfig parse_config_text(const std::string& text);

/// Comma-separated points, ':' between coordinates; coordinates are real or
/// complex ("0.3", "0.2-0.1i", "0.5i").
std::vector<std::vector<Scalar>> parse_points(const std::string& text);

/// Report directory for a run: <root>/<experiment>-<tag or timestamp>.
std::string output_directory(const RunConfig& config);

/// Runs the experiment, writes the report directory and prints a summary.
/// Exit codes: 0 ok, 1 theorem-backed check failed, 2 usage error.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + execute.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hilbmod
