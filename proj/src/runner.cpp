#include "spacsim/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <system_error>

#include "spacsim/errors.hpp"
#include "spacsim/io.hpp"
#include "spacsim/version.hpp"

namespace spacsim {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void write_failed_marker(const std::filesystem::path& dir,
                         const std::string& stage, const std::string& what) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  std::ofstream out(dir / io::kFailedMarker, std::ios::binary);
  out << "stage: " << stage << "\n" << what << "\n";
}

std::string pair_json(const std::pair<double, double>& p) {
  return "[" + io::fmt17(p.first) + "," + io::fmt17(p.second) + "]";
}

std::string vec_json(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += io::fmt17(v[i]);
  }
  return s + "]";
}

}  // namespace

RunReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::filesystem::path dir = cfg.out_dir;
  std::string stage = "setup";
  try {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
      throw IoError("cannot create output directory " + dir.string() + ": " +
                    ec.message());
    // A fresh run invalidates any earlier failure marker.
    std::filesystem::remove(dir / io::kFailedMarker, ec);
    write_config(dir / io::kConfigFile, cfg);

    RunReport report;
    report.version = kVersion;
    report.seed = cfg.params.seed;
    report.out_dir = dir;
    const auto t_total = Clock::now();

    stage = "generate";
    auto t = Clock::now();
    const HeraldedEnsemble ensemble = generate_ensemble(cfg.params);
    report.timings.generate_s = seconds_since(t);
    report.total_trials = ensemble.total_trials;
    report.accepted = ensemble.accepted;
    report.efficiency = ensemble.efficiency;

    stage = "sweep";
    t = Clock::now();
    const QuadratureDataset dataset =
        sweep_quadratures(ensemble, cfg.sweep(), cfg.histogram(),
                          /*keep_samples=*/false);
    report.timings.sweep_s = seconds_since(t);
    report.drop_warning = dataset.drop_warning;
    io::write_dataset_csv(dir / io::kDatasetCsv, dataset);
    io::write_dataset_sidecar(dir / io::kDatasetSidecar, dataset);

    stage = "reconstruct";
    t = Clock::now();
    const PatternTable patterns =
        build_pattern_table(cfg.n_max, dataset.bin_centers());
    const DensityMatrix rho = reconstruct(dataset, patterns);
    report.timings.reconstruct_s = seconds_since(t);
    report.raw_trace = rho.raw_trace;
    report.rho_diagonal = rho.diagonal();
    report.eigenvalues = rho.eigenvalues();
    io::write_density_matrix(dir / io::kDensityFile, rho);

    stage = "wigner";
    t = Clock::now();
    const WignerGrid grid = evaluate_grid(rho, cfg.wigner_spec());
    const auto ideal = ideal_spacs_coefficients(cfg.params.alpha, cfg.n_max);
    report.fidelity_ideal = fidelity(rho, ideal);
    report.timings.wigner_s = seconds_since(t);
    report.wigner_min = grid.min_value;
    report.wigner_argmin = grid.min_location;
    report.wigner_max = grid.max_value;
    report.refined_min = grid.refined_min_value;
    report.refined_argmin = grid.refined_min_location;
    report.grid_integral = grid.grid_integral();
    io::write_wigner_csv(dir / io::kWignerCsv, grid);
    io::write_wigner_summary(dir / io::kWignerSummary, grid);

    stage = "report";
    report.timings.total_s = seconds_since(t_total);
    write_report(dir / io::kReportFile, report);
    return report;
  } catch (const std::exception& e) {
    write_failed_marker(dir, stage, e.what());
    throw;
  }
}

std::string render_report_json(const RunReport& r) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"schema\": \"run-report-v1\",\n";
  out << "  \"version\": \"" << r.version << "\",\n";
  out << "  \"seed\": " << r.seed << ",\n";
  out << "  \"total_trials\": " << r.total_trials << ",\n";
  out << "  \"accepted\": " << r.accepted << ",\n";
  out << "  \"efficiency\": " << io::fmt17(r.efficiency) << ",\n";
  out << "  \"drop_warning\": " << (r.drop_warning ? "true" : "false")
      << ",\n";
  out << "  \"raw_trace\": " << io::fmt17(r.raw_trace) << ",\n";
  out << "  \"rho_diagonal\": " << vec_json(r.rho_diagonal) << ",\n";
  out << "  \"eigenvalues\": " << vec_json(r.eigenvalues) << ",\n";
  out << "  \"wigner_min\": " << io::fmt17(r.wigner_min) << ",\n";
  out << "  \"wigner_argmin\": " << pair_json(r.wigner_argmin) << ",\n";
  out << "  \"wigner_max\": " << io::fmt17(r.wigner_max) << ",\n";
  out << "  \"refined_min\": " << io::fmt17(r.refined_min) << ",\n";
  out << "  \"refined_argmin\": " << pair_json(r.refined_argmin) << ",\n";
  out << "  \"grid_integral\": " << io::fmt17(r.grid_integral) << ",\n";
  out << "  \"fidelity_ideal\": " << io::fmt17(r.fidelity_ideal) << ",\n";
  out << "  \"timings\": {\n";
  out << "    \"generate_s\": " << io::fmt17(r.timings.generate_s) << ",\n";
  out << "    \"sweep_s\": " << io::fmt17(r.timings.sweep_s) << ",\n";
  out << "    \"reconstruct_s\": " << io::fmt17(r.timings.reconstruct_s)
      << ",\n";
  out << "    \"wigner_s\": " << io::fmt17(r.timings.wigner_s) << ",\n";
  out << "    \"total_s\": " << io::fmt17(r.timings.total_s) << "\n";
  out << "  },\n";
  out << "  \"artifacts\": {\n";
  out << "    \"config\": \"" << io::kConfigFile << "\",\n";
  out << "    \"dataset_csv\": \"" << io::kDatasetCsv << "\",\n";
  out << "    \"dataset_sidecar\": \"" << io::kDatasetSidecar << "\",\n";
  out << "    \"density_matrix\": \"" << io::kDensityFile << "\",\n";
  out << "    \"wigner_csv\": \"" << io::kWignerCsv << "\",\n";
  out << "    \"wigner_summary\": \"" << io::kWignerSummary << "\"\n";
  out << "  }\n";
  out << "}\n";
  return out.str();
}

void write_report(const std::filesystem::path& path, const RunReport& report) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << render_report_json(report);
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

std::string render_report_text(const RunReport& r) {
  std::ostringstream out;
  out << std::setprecision(6);
  out << "run " << r.out_dir.string() << " (version " << r.version
      << ", seed " << r.seed << ")\n";
  out << "  heralding: " << r.accepted << " accepted / " << r.total_trials
      << " trials (efficiency " << r.efficiency << ")";
  if (r.drop_warning) out << "  [histogram drop warning]";
  out << "\n";
  out << "  raw trace: " << r.raw_trace << "\n";
  out << "  rho diagonal:";
  for (double d : r.rho_diagonal) out << ' ' << d;
  out << "\n  eigenvalues:";
  for (double e : r.eigenvalues) out << ' ' << e;
  out << "\n  Wigner min " << r.wigner_min << " at ("
      << r.wigner_argmin.first << ", " << r.wigner_argmin.second
      << "); refined " << r.refined_min << " at ("
      << r.refined_argmin.first << ", " << r.refined_argmin.second << ")\n";
  out << "  Wigner max " << r.wigner_max << "; grid integral "
      << r.grid_integral << "\n";
  out << "  fidelity vs ideal photon-added state: " << r.fidelity_ideal
      << "\n";
  out << "  timings [s]: generate " << r.timings.generate_s << ", sweep "
      << r.timings.sweep_s << ", reconstruct " << r.timings.reconstruct_s
      << ", wigner " << r.timings.wigner_s << ", total " << r.timings.total_s
      << "\n";
  return out.str();
}

ReplayCheck replay_run(const std::filesystem::path& run_dir) {
  const ExperimentConfig cfg = parse_config(run_dir / io::kConfigFile);
  const QuadratureDataset dataset = io::read_dataset(
      run_dir / io::kDatasetCsv, run_dir / io::kDatasetSidecar);

  ReplayCheck check;
  RunReport& r = check.recomputed;
  r.version = kVersion;
  r.seed = dataset.seed;
  r.total_trials = dataset.total_trials;
  r.accepted = dataset.samples_per_theta;
  r.efficiency = dataset.efficiency;
  r.drop_warning = dataset.drop_warning;
  r.out_dir = run_dir;

  const auto t_total = Clock::now();
  auto t = Clock::now();
  const PatternTable patterns =
      build_pattern_table(cfg.n_max, dataset.bin_centers());
  const DensityMatrix rho = reconstruct(dataset, patterns);
  r.timings.reconstruct_s = seconds_since(t);
  r.raw_trace = rho.raw_trace;
  r.rho_diagonal = rho.diagonal();
  r.eigenvalues = rho.eigenvalues();

  t = Clock::now();
  const WignerGrid grid = evaluate_grid(rho, cfg.wigner_spec());
  const auto ideal = ideal_spacs_coefficients(cfg.params.alpha, cfg.n_max);
  r.fidelity_ideal = fidelity(rho, ideal);
  r.timings.wigner_s = seconds_since(t);
  r.wigner_min = grid.min_value;
  r.wigner_argmin = grid.min_location;
  r.wigner_max = grid.max_value;
  r.refined_min = grid.refined_min_value;
  r.refined_argmin = grid.refined_min_location;
  r.grid_integral = grid.grid_integral();
  r.timings.total_s = seconds_since(t_total);

  const DensityMatrix stored =
      io::read_density_matrix(run_dir / io::kDensityFile);
  if (stored.n_max != rho.n_max)
    throw GridMismatch("stored density matrix truncation differs from config");
  double dev = 0.0;
  for (int i = 0; i < rho.n_max; ++i)
    for (int k = 0; k < rho.n_max; ++k)
      dev = std::max(dev, std::abs(rho.entries(i, k) - stored.entries(i, k)));
  check.density_max_dev = dev;
  check.raw_trace_dev = std::abs(rho.raw_trace - stored.raw_trace);
  return check;
}

std::vector<CampaignEntry> sweep_campaign(
    const ExperimentConfig& base, const std::vector<CampaignRange>& ranges,
    const std::filesystem::path& campaign_dir) {
  if (ranges.empty())
    throw InvalidParams("campaign needs at least one parameter range");
  std::size_t total = 1;
  for (const auto& range : ranges) {
    if (range.values.empty())
      throw InvalidParams("campaign range for '" + range.key +
                          "' has no values");
    total *= range.values.size();
  }

  std::error_code ec;
  std::filesystem::create_directories(campaign_dir, ec);
  if (ec)
    throw IoError("cannot create campaign directory " +
                  campaign_dir.string() + ": " + ec.message());

  std::ofstream csv(campaign_dir / "campaign.csv", std::ios::binary);
  if (!csv)
    throw IoError("cannot open campaign.csv in " + campaign_dir.string());
  csv << "run_index,status,alpha_re,alpha_im,sigma,r,gamma,seed,"
         "wigner_min,fidelity_ideal,efficiency,raw_trace,out_dir,error\n";

  std::vector<CampaignEntry> entries;
  entries.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    CampaignEntry entry;
    entry.run_index = idx;
    entry.cfg = base;

    // Decode idx into range coordinates; the last range varies fastest.
    std::size_t rem = idx;
    for (std::size_t ri = ranges.size(); ri-- > 0;) {
      const auto& range = ranges[ri];
      const std::size_t vi = rem % range.values.size();
      rem /= range.values.size();
      apply_config_key(entry.cfg, range.key, range.values[vi]);
    }

    // Independent documented per-run stream: mix(base_seed XOR run_index).
    entry.cfg.params.seed = splitmix64_mix(base.params.seed ^
                                           static_cast<std::uint64_t>(idx));
    std::ostringstream name;
    name << "run-" << std::setw(4) << std::setfill('0') << idx;
    entry.cfg.out_dir = (campaign_dir / name.str()).string();

    try {
      entry.report = run_experiment(entry.cfg);
      entry.ok = true;
    } catch (const std::exception& e) {
      entry.ok = false;
      entry.error = e.what();
    }

    const ModelParams& p = entry.cfg.params;
    csv << idx << ',' << (entry.ok ? "ok" : "failed") << ','
        << io::fmt17(p.alpha.real()) << ',' << io::fmt17(p.alpha.imag())
        << ',' << io::fmt17(p.sigma) << ',' << io::fmt17(p.r) << ','
        << io::fmt17(p.gamma) << ',' << p.seed << ',';
    if (entry.ok) {
      csv << io::fmt17(entry.report.wigner_min) << ','
          << io::fmt17(entry.report.fidelity_ideal) << ','
          << io::fmt17(entry.report.efficiency) << ','
          << io::fmt17(entry.report.raw_trace);
    } else {
      csv << ",,,";
    }
    std::string err = entry.error;
    for (char& c : err)
      if (c == ',' || c == '\n' || c == '\r') c = ';';
    csv << ',' << entry.cfg.out_dir << ',' << err << '\n';
    entries.push_back(std::move(entry));
  }
  csv.flush();
  if (!csv) throw IoError("write failed for campaign.csv");
  return entries;
}

}  // namespace spacsim
