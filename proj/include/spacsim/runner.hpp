#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "spacsim/config.hpp"
#include "spacsim/tomography.hpp"
#include "spacsim/wigner.hpp"

namespace spacsim {

struct StageTimings {
  double generate_s = 0.0;
  double sweep_s = 0.0;
  double reconstruct_s = 0.0;
  double wigner_s = 0.0;
  double total_s = 0.0;
};

/// Summary of one completed run. Every number here is recomputable from the
/// artifacts persisted in `out_dir` (see replay_run).
struct RunReport {
  std::string version;
  std::uint64_t seed = 0;
  std::uint64_t total_trials = 0;
  std::uint64_t accepted = 0;
  double efficiency = 0.0;
  bool drop_warning = false;

  double raw_trace = 0.0;
  std::vector<double> rho_diagonal;
  std::vector<double> eigenvalues;

  double wigner_min = 0.0;
  std::pair<double, double> wigner_argmin{0.0, 0.0};
  double wigner_max = 0.0;
  double refined_min = 0.0;
  std::pair<double, double> refined_argmin{0.0, 0.0};
  double grid_integral = 0.0;

  double fidelity_ideal = 0.0;  // vs the ideal photon-added coherent state

  StageTimings timings;
  std::filesystem::path out_dir;
};

/// Runs the full pipeline (sample -> herald -> sweep -> reconstruct ->
/// Wigner) deterministically from cfg.params.seed and persists, in
/// cfg.out_dir: config.cfg, quadratures.csv, quadratures.json,
/// density_matrix.json, wigner.csv, wigner.json, report.json.
/// On error, a FAILED marker naming the stage is written and the module
/// error propagates unchanged.
RunReport run_experiment(const ExperimentConfig& cfg);

/// Serializes the report (17-significant-digit numbers; wall-clock timings
/// are the one run-to-run varying block).
void write_report(const std::filesystem::path& path, const RunReport& report);

/// Human-readable multi-line summary.
std::string render_report_text(const RunReport& report);

/// The report as a JSON string (same schema as the report.json artifact).
std::string render_report_json(const RunReport& report);

/// Re-derives the reported numbers of a persisted run from its dataset
/// artifacts alone (config.cfg + quadratures.*), re-running tomography and
/// Wigner stages, and compares against the stored density matrix.
struct ReplayCheck {
  RunReport recomputed;
  double density_max_dev = 0.0;  // sup-norm vs stored density_matrix.json
  double raw_trace_dev = 0.0;
};
ReplayCheck replay_run(const std::filesystem::path& run_dir);

/// One axis of a campaign: a config key (CLI long name, e.g. "gamma") and
/// the values it takes.
struct CampaignRange {
  std::string key;
  std::vector<std::string> values;
};

struct CampaignEntry {
  std::size_t run_index = 0;
  ExperimentConfig cfg;  // fully resolved (including derived seed / out dir)
  bool ok = false;
  std::string error;  // empty when ok
  RunReport report;   // valid when ok
};

/// Cartesian-product campaign over `ranges` (later ranges vary fastest).
/// Each run gets seed = splitmix64_mix(base_seed XOR run_index) and writes
/// into campaign_dir/run-NNNN. Individual failures are recorded and the
/// campaign continues. Writes campaign_dir/campaign.csv aggregating
/// (params -> Wigner min, fidelity, efficiency). Throws InvalidParams when
/// ranges are empty or any range has no values.
std::vector<CampaignEntry> sweep_campaign(
    const ExperimentConfig& base, const std::vector<CampaignRange>& ranges,
    const std::filesystem::path& campaign_dir);

}  // namespace spacsim
