#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace dlaplace::cli {

/// Invalid command line. what() is a single line naming the offending flag.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { csv, json };
enum class Action { run, help, version };

/// Validated parameters for one invocation. Only the fields of the chosen
/// subcommand are meaningful.
struct RunConfig {
  Action action = Action::run;
  std::string text;  // help or version text for the non-run actions

  std::string subcommand;
  unsigned threads = 0;  // 0 = all cores
  std::uint64_t seed = 1;
  std::string output_path;  // resolved; never empty for Action::run
  Format format = Format::csv;

  // stirling
  std::int64_t p_max = 200;
  bool exact = false;
  // laplace-demo, gaussian-sum, sum-limit
  std::vector<std::int64_t> n_list;
  int dim = 2;
  // sum-limit, simulate
  double c = 0.8;
  // hy-min, alpha-curve
  double y = 2.5;
  double radius = 0.05;
  int grid = 400;
  int points = 100;
  double r_max = 0.999;
  // simulate, bounds-check
  std::int64_t n = 300;
  std::int64_t m = 18;
  std::int64_t trials = 200;
  bool without_replacement = false;
  double bin_width = 0.05;
  double z = 3.0;
  std::int64_t max_tries = 10'000'000;
};

/// Environment variable naming the directory used when --output is absent.
inline constexpr const char* kOutputDirEnv = "DLAPLACE_OUTPUT_DIR";

/// args excludes the program name. Throws ConfigError.
[[nodiscard]] RunConfig parse_config(const std::vector<std::string>& args);

/// Runs the computation, writes the artifact to config.output_path and a
/// one-line summary to `out`. Returns 0 on completion. Module errors
/// propagate as exceptions.
int run(const RunConfig& config, std::ostream& out);

}  // namespace dlaplace::cli
