#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qfisim/model.hpp"

namespace qfisim {

enum class ExperimentKind {
  QFI_TIMESERIES,  // qfi_timeseries.csv over t_grid at fixed (model, state)
  SCALING_SWEEP,   // qfi_scaling.csv + qfi_scaling_fit.csv over n_grid x t_grid
  HEATMAP,         // heatmap.csv: evolved local-term covariance matrix per t
  ETA_TABLE,       // eta.csv: the four eta families at one (N, t)
  ASYMPTOTE,       // asymptote.csv: quench QFI density, closed form (+ k-sum check)
  BOUND_CHECK,     // bound_check.csv: randomized growth-bound instances
};

enum class EngineKind { ED, FREE_FERMION, BOTH };

std::string to_string(ExperimentKind e);
std::string to_string(EngineKind e);

// Flat mirror of the JSON config. Unknown keys and type mismatches surface as
// diagnostics, never silent tolerance.
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::QFI_TIMESERIES;
  ModelSpec model;                          // family, n_sites, couplings, custom_terms
  double theta = 0.0;
  double phi = 0.0;
  std::vector<double> t_grid;
  std::vector<int> n_grid;
  EngineKind engine = EngineKind::ED;
  std::string output_dir = "qfisim_output";
  std::uint64_t seed = 0;
  bool has_lambda_star = false;             // ASYMPTOTE only
  bool lambda_star_infinite = false;
  double lambda_star_value = 0.0;
};

struct Diagnostic {
  std::string field;
  std::string rule;
};

struct ParsedConfig {
  ExperimentConfig config;
  std::vector<Diagnostic> diagnostics;  // parse-level problems (unknown keys, bad types)
};

// Parses the JSON text of a config file. Throws std::invalid_argument only on
// malformed JSON; shape problems are returned as diagnostics.
ParsedConfig parse_config_text(const std::string& json_text);
ParsedConfig parse_config_file(const std::string& path);

// Serialized resolved config (round-trips through parse_config_text).
std::string config_to_json(const ExperimentConfig& c);

// Empty iff run() would accept the config.
std::vector<Diagnostic> validate(const ExperimentConfig& c);

struct RunOptions {
  int threads = 0;  // 0 = hardware concurrency
  bool quiet = false;
  std::optional<EngineKind> engine_override;
  std::optional<std::string> output_dir_override;
};

struct RunResult {
  int exit_code = 0;  // 0 ok, 1 invalid config, 2 numerical-invariant violation
  std::vector<std::string> files;
  std::vector<Diagnostic> diagnostics;
  std::string error;  // nonempty on exit_code != 0
};

RunResult run(const ExperimentConfig& config, const RunOptions& opts = {});

struct Preset {
  std::string name;
  std::string description;
  ExperimentConfig config;
};

// Built-in one-command reproductions of the figure-level experiments.
const std::vector<Preset>& presets();
std::optional<ExperimentConfig> preset_config(const std::string& name);

}  // namespace qfisim
