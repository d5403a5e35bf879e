#pragma once

// Experiment dispatch. run() produces a JSON result envelope (config echo,
// toolkit version, wall clock, payload) plus named CSV tables; the caller
// persists them. Payloads are deterministic functions of the config — the
// wall-clock field is the only thing that varies between identical runs.

#include <string>
#include <vector>

#include "bellkit/config.hpp"
#include "bellkit/io.hpp"

namespace bellkit {

inline constexpr const char* kToolkitVersion = "0.1.0";

struct RunOutput {
  Json envelope;
  // (suffix, content): persisted as <prefix>.<suffix> by the CLI.
  std::vector<std::pair<std::string, std::string>> tables;
};

RunOutput run(const ExperimentConfig& config);

}  // namespace bellkit
