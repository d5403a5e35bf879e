#pragma once

// Experiment configuration: a flat, strictly validated key/value text file
// ("key = value" lines, '#' comments, "model.*" keys collected into the
// per-experiment parameter map), with full override via CLI flags. Unknown
// keys are rejected; all errors are reported together, not first-failure.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bellkit {

enum class ExperimentKind { chsh, fine, singlet, counterexample, spreadsheet, contextual };

std::string experiment_name(ExperimentKind kind);
std::optional<ExperimentKind> experiment_from_name(const std::string& name);

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::chsh;
  std::uint64_t seed = 0;
  long n = 1000;
  long runs = 1;
  std::optional<std::array<double, 4>> angles_deg;  // a1, a2, b1, b2
  std::map<std::string, std::string> model_params;
  std::string output_prefix;  // empty: stdout only
  std::string input_path;     // behavior.json for chsh/fine
};

struct ConfigError {
  int line = 0;  // 0 when not tied to a file line
  std::string key;
  std::string message;

  std::string format() const;
};

struct ConfigParse {
  std::optional<ExperimentConfig> config;  // set when errors is empty
  std::vector<ConfigError> errors;
};

// Full strict parse of the config text; never throws, collects every error.
ConfigParse parse_config_text(const std::string& text);

// Semantic validation (ranges, per-experiment model params). Empty = valid.
std::vector<ConfigError> validate(const ExperimentConfig& config);

}  // namespace bellkit
