#pragma once

// Command-line front end. Experiments are described by a YAML (or JSON) config
// file or a shipped preset; every field is validated before any simulation.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "specquant/error.hpp"
#include "specquant/models.hpp"

namespace specquant::cli {

enum class Command { estimate, test, power, simulate, diagnose };

std::string to_string(Command command);

struct NamedModel {
  std::string label;
  SpectralModel model;
};

struct ExperimentConfig {
  Command command = Command::estimate;
  std::vector<NamedModel> models;
  std::vector<double> levels;
  std::vector<std::size_t> sizes;
  std::size_t replications = 100;
  /// estimate: raw, smoothed or both.
  std::string kind = "raw";
  std::string window = "bartlett";
  /// Lag-window bandwidth; empty means default_bandwidth(n).
  std::optional<std::size_t> m;
  double alpha = 0.1;
  std::size_t sigma_replications = 100;
  std::uint64_t base_seed = 1;
  /// diagnose: tn_variance or raw_limit.
  std::string diagnostic = "tn_variance";
  std::vector<double> betas;
  double lambda = kPi / 4;
  /// Series CSV for test and single-series estimate.
  std::string input;
};

/// Thrown for invalid configs; the message starts with "line N:".
class ConfigError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

/// Parses and validates a config for the given command. Estimate configs
/// may omit `models` and `n` when an input series is supplied instead.
ExperimentConfig parse_config(const std::string& text, Command command);

/// Parses a model shorthand such as "WN", "MA1(0.9)", "AR1(-0.9,v=2)" or
/// "WN+cos(0.5@pi/2)". Throws ArgumentError.
SpectralModel parse_model_tag(const std::string& text);

/// Parses a number or a multiple of pi such as "pi/4", "-3pi/4", "0.25*pi".
double parse_angle(const std::string& text);

std::vector<std::string> preset_names();
/// Config text of a shipped preset; throws ArgumentError for unknown names.
const std::string& preset_text(const std::string& name);
Command preset_command(const std::string& name);

/// Runs the CLI on argv-style arguments (args[0] is the program name).
/// Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace specquant::cli
