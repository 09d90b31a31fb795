#include <complex>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spacsim/config.hpp"
#include "spacsim/errors.hpp"
#include "spacsim/runner.hpp"
#include "spacsim/version.hpp"

namespace {

std::vector<std::string> split_on_commas(const std::string& s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const auto c = s.find(',', pos);
    if (c == std::string::npos) {
      out.push_back(s.substr(pos));
      break;
    }
    out.push_back(s.substr(pos, c - pos));
    pos = c + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Monte Carlo quadrature simulator and homodyne-tomography toolkit for "
      "heralded squeezed light"};
  app.set_version_flag("--version", spacsim::kVersion);
  app.set_config("--config", "", "Load a key=value config file; command-line "
                                 "flags override its values");
  app.require_subcommand(0, 1);

  spacsim::ExperimentConfig cfg;
  double alpha_re = cfg.params.alpha.real();
  double alpha_im = cfg.params.alpha.imag();
  std::string grid_text;

  app.add_option("--alpha-re", alpha_re, "Coherent amplitude, real part")
      ->capture_default_str();
  app.add_option("--alpha-im", alpha_im, "Coherent amplitude, imaginary part")
      ->capture_default_str();
  app.add_option("--sigma", cfg.params.sigma,
                 "Classical fluctuation scale (vacuum level 1/sqrt(2))")
      ->capture_default_str();
  app.add_option("--r", cfg.params.r, "Squeezing parameter")
      ->capture_default_str();
  app.add_option("--gamma", cfg.params.gamma, "Herald threshold |b_i| > gamma")
      ->capture_default_str();
  app.add_option("--samples", cfg.params.target_conditioned,
                 "Conditioned samples to accumulate")
      ->capture_default_str();
  app.add_option("--max-trials", cfg.params.max_trials,
                 "Unconditioned trial cap before aborting")
      ->capture_default_str();
  app.add_option("--seed", cfg.params.seed, "Counter-based generator seed")
      ->capture_default_str();
  app.add_option("--theta-start-deg", cfg.theta_start_deg,
                 "Phase sweep start [deg]")
      ->capture_default_str();
  app.add_option("--theta-stop-deg", cfg.theta_stop_deg,
                 "Phase sweep stop [deg], inclusive")
      ->capture_default_str();
  app.add_option("--theta-step-deg", cfg.theta_step_deg,
                 "Phase sweep step [deg]")
      ->capture_default_str();
  app.add_option("--bins", cfg.bins, "Histogram bin count")
      ->capture_default_str();
  app.add_option("--q-range", cfg.q_range,
                 "Histogram covers quadratures in [-q-range, q-range]")
      ->capture_default_str();
  app.add_option("--nmax", cfg.n_max, "Fock truncation (modes 0..nmax-1)")
      ->capture_default_str();
  app.add_option("--grid", grid_text,
                 "Wigner grid as POINTS[:EXTENT], e.g. 161:4");
  app.add_option("--out", cfg.out_dir, "Output directory for run artifacts")
      ->capture_default_str();
  app.add_option("--format", cfg.format, "Stdout summary format: text | json")
      ->capture_default_str();

  CLI::App* campaign =
      app.add_subcommand("campaign", "Cartesian-product parameter sweep");
  campaign->fallthrough();
  std::vector<std::string> vary;
  campaign
      ->add_option("--vary", vary,
                   "KEY=V1,V2,... (repeatable; config keys such as gamma, r, "
                   "alpha-re). Later axes vary fastest.")
      ->required()
      ->take_all();

  CLI::App* replay = app.add_subcommand(
      "replay",
      "Recompute a persisted run's report from its dataset artifacts and "
      "verify the stored density matrix");
  replay->fallthrough();
  std::string replay_dir;
  replay->add_option("run_dir", replay_dir, "Run directory to replay")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    cfg.params.alpha = {alpha_re, alpha_im};
    if (!grid_text.empty())
      spacsim::parse_grid_spec(grid_text, cfg.grid_points, cfg.grid_extent);

    if (replay->parsed()) {
      const spacsim::ReplayCheck check = spacsim::replay_run(replay_dir);
      std::cout << spacsim::render_report_text(check.recomputed);
      std::cout << "  replay deviation vs stored density matrix: "
                << check.density_max_dev
                << " (raw trace: " << check.raw_trace_dev << ")\n";
      if (check.density_max_dev > 1e-12 || check.raw_trace_dev > 1e-12) {
        std::cerr << "replay mismatch: stored density matrix is not "
                     "reproduced by the persisted dataset\n";
        return 2;
      }
      return 0;
    }

    if (campaign->parsed()) {
      std::vector<spacsim::CampaignRange> ranges;
      for (const std::string& spec : vary) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0)
          throw spacsim::InvalidParams("--vary expects KEY=V1,V2,..., got '" +
                                       spec + "'");
        spacsim::CampaignRange range;
        range.key = spec.substr(0, eq);
        range.values = split_on_commas(spec.substr(eq + 1));
        {  // reject unknown keys / unparsable values before running
          spacsim::ExperimentConfig probe = cfg;
          for (const std::string& v : range.values)
            spacsim::apply_config_key(probe, range.key, v);
        }
        ranges.push_back(std::move(range));
      }
      const auto entries = spacsim::sweep_campaign(cfg, ranges, cfg.out_dir);
      std::size_t failed = 0;
      for (const auto& entry : entries) {
        if (entry.ok) {
          if (cfg.format == "json")
            std::cout << spacsim::render_report_json(entry.report);
          else
            std::cout << spacsim::render_report_text(entry.report);
        } else {
          ++failed;
          std::cerr << "run " << entry.run_index << " failed: " << entry.error
                    << "\n";
        }
      }
      std::cout << entries.size() - failed << "/" << entries.size()
                << " campaign runs succeeded; aggregate in "
                << (std::filesystem::path(cfg.out_dir) / "campaign.csv")
                       .string()
                << "\n";
      return failed == entries.size() ? 2 : 0;
    }

    const spacsim::RunReport report = spacsim::run_experiment(cfg);
    if (cfg.format == "json")
      std::cout << spacsim::render_report_json(report);
    else
      std::cout << spacsim::render_report_text(report);
    return 0;
  } catch (const spacsim::InvalidParams& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;  // bad usage / configuration
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;  // runtime failure
  }
}
