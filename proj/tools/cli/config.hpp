#pragma once

// Command-line configuration shared by every subcommand.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qpsh/field.hpp"

namespace qpsh::cli {

using Json = nlohmann::ordered_json;

/// Invalid or inconsistent configuration (exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct ExperimentConfig {
  std::string subcommand;
  std::optional<std::string> suite;
  int n = 2;
  bool n_given = false;
  Backend backend = Backend::autodiff;
  std::vector<std::string> fields;
  std::vector<double> point;
  double box_lo = -1.0;
  double box_hi = 1.0;
  int nodes_per_axis = 6;
  std::optional<std::int64_t> qmc_samples;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  int threads = 1;
  std::optional<std::string> matrix;
  bool random_matrix = false;
  std::vector<std::string> families;
  double eps_start = 0.4;
  int eps_steps = 6;
  double outer_scale = 2.0;
  int sup_points = 5;
  std::optional<int> trials;
  // destinations; not part of the echoed configuration
  std::optional<std::string> out;
  std::optional<std::string> csv;
};

/// Result of argument parsing: either a config or an early exit (help, usage error).
struct ParseOutcome {
  std::optional<ExperimentConfig> config;
  int exit_code = 0;
  std::string message;
};

ParseOutcome parse_arguments(int argc, const char* const* argv);

/// Structural checks that do not need the library (n >= 2, mandatory seeds, ranges).
void validate(const ExperimentConfig& c);

/// Seed of a sampled computation; throws ConfigError when none was given.
std::uint64_t require_seed(const ExperimentConfig& c, const std::string& what);

/// Configuration echo written into every envelope.
Json to_json(const ExperimentConfig& c);

}  // namespace qpsh::cli
