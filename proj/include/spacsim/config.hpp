#pragma once

#include <filesystem>
#include <string>

#include "spacsim/empirics.hpp"
#include "spacsim/model.hpp"
#include "spacsim/wigner.hpp"

namespace spacsim {

/// Full description of one experiment run: scenario, sweep, histogram,
/// truncation, Wigner grid, and output destination. Round-trips losslessly
/// through the flat key=value config format (write_config / parse_config);
/// the same format is what the CLI accepts via --config.
struct ExperimentConfig {
  ModelParams params;  // alpha, sigma, r, gamma, seed, samples, trial cap

  double theta_start_deg = 0.0;
  double theta_stop_deg = 180.0;
  double theta_step_deg = 1.0;

  double q_range = 8.0;  // histogram covers [-q_range, q_range]
  int bins = 201;

  int n_max = 4;

  int grid_points = 161;
  double grid_extent = 4.0;

  std::string out_dir = "run-out";
  std::string format = "text";  // stdout summary format: "text" | "json"

  /// Throws InvalidParams on any structural violation (delegates scenario
  /// checks to ModelParams::validate).
  void validate() const;

  ThetaSweep sweep() const;
  HistogramSpec histogram() const;
  WignerGridSpec wigner_spec() const;
};

/// Writes the canonical key=value snapshot (deterministic byte-for-byte for
/// equal configs; doubles at 17 significant digits).
void write_config(const std::filesystem::path& path,
                  const ExperimentConfig& cfg);

/// Parses a key=value config file. Unknown keys are InvalidParams errors
/// naming the key; '#'-prefixed lines and blank lines are skipped; values
/// may be double-quoted. Keys match the CLI long flag names.
ExperimentConfig parse_config(const std::filesystem::path& path);

/// Applies one key=value assignment to the config (shared by parse_config
/// and anything that needs CLI-equivalent semantics). Throws InvalidParams
/// for unknown keys or unparsable values.
void apply_config_key(ExperimentConfig& cfg, const std::string& key,
                      const std::string& value);

/// Parses the composite grid syntax "POINTS[:EXTENT]", e.g. "161:4".
void parse_grid_spec(const std::string& text, int& points, double& extent);

}  // namespace spacsim
