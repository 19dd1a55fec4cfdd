#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spdeht/montecarlo.hpp"

namespace spdeht::cli {

/// Configuration problem (bad key, bad value, missing field). The CLI maps
/// this to exit code 2; every other exception maps to 3.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Flat mirror of ModelSpec + TestSpec + McPlan plus output controls. Fields
/// that have no safe default are optional and demanded per command.
struct RunConfig {
  std::optional<double> theta;
  std::optional<double> theta0;
  std::optional<double> theta1;
  double sigma = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
  int dim = 1;
  double varpi = 1.0;
  std::string eigen_model = "interval";  ///< "interval" or "powerlaw"
  double length = 3.14159265358979323846;
  std::optional<std::size_t> n_modes;
  std::optional<double> horizon;
  int steps_per_unit = 100;
  double alpha = 0.05;
  double delta = 0.0;
  std::string regime = "large-t";  ///< "large-t" or "large-n"
  std::size_t reps = 1000;
  std::uint64_t seed = 1;
  std::vector<double> sweep;
  std::string out = "-";
  std::string format = "csv";  ///< "csv" or "json"
  double threshold_offset = 0.0;
  std::optional<double> eps_min;
  std::optional<double> eps_max;
  std::size_t table_points = 41;
};

/// One key=value assignment with its provenance for error messages.
struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;  ///< 0 when the entry came from a flag
};

/// Parses the flat key=value config format: one assignment per line, blank
/// lines and #-comments ignored. Throws ConfigError with the line number on
/// malformed lines.
std::vector<ConfigEntry> parse_config_text(const std::string& text);

/// Applies one assignment; throws ConfigError naming the key (and line when
/// nonzero) on unknown keys or unparsable values.
void apply_entry(RunConfig& cfg, const ConfigEntry& entry);

/// Serializes every field back to the same key=value vocabulary; %.17g for
/// reals, so a round trip reproduces the config exactly.
std::vector<std::pair<std::string, std::string>> to_key_values(const RunConfig& cfg);

/// Reads the `# key=value` header block the report writers emit.
std::vector<ConfigEntry> read_report_header(std::istream& in);

// Build checked core objects out of the config. All throw ConfigError with
// the offending field named.
EigenvalueModel build_model(const RunConfig& cfg);
SpectralBasis build_basis(const RunConfig& cfg);
ModelSpec build_model_spec(const RunConfig& cfg, double theta);
Regime build_regime(const RunConfig& cfg);
TestSpec build_test_spec(const RunConfig& cfg, double log_threshold_offset = 0.0);
McPlan build_plan(const RunConfig& cfg, double log_threshold_offset = 0.0);

// Subcommands. Each returns a process exit status.
int cmd_simulate(const RunConfig& cfg);
int cmd_test(const RunConfig& cfg);
int cmd_type1(const RunConfig& cfg);
int cmd_power(const RunConfig& cfg);
int cmd_sweep(const RunConfig& cfg);
int cmd_sld_table(const RunConfig& cfg);
int cmd_compare(const RunConfig& cfg);

/// Full argument parsing and dispatch. Exit codes: 0 success, 2 config
/// error, 3 runtime or domain error.
int run_cli(int argc, const char* const* argv);

}  // namespace spdeht::cli
