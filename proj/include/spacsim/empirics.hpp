#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "spacsim/model.hpp"

namespace spacsim {

/// Ordered phase sweep. Canonical storage is in degrees (exact decimals);
/// radians are derived once so every consumer sees identical doubles.
struct ThetaSweep {
  std::vector<double> theta_deg;
  std::vector<double> theta_rad;
  double step_rad = 0.0;

  /// Uniform sweep start..stop inclusive of both endpoints (stop is included
  /// when it lands within half a step of an integer number of steps).
  static ThetaSweep degrees(double start_deg, double stop_deg, double step_deg);

  /// Throws InvalidParams unless values are strictly increasing, first == 0,
  /// and all < pi + step/2.
  void validate() const;

  std::size_t size() const { return theta_rad.size(); }

  /// True when the sweep reaches pi (within half a step), as the
  /// tomographic integral requires.
  bool covers_half_turn() const;
};

/// Uniform histogram specification over [q_min, q_max].
struct HistogramSpec {
  double q_min = -8.0;
  double q_max = 8.0;
  int bins = 201;

  void validate() const;
  std::vector<double> edges() const;
  std::vector<double> centers() const;
  double dq() const { return (q_max - q_min) / bins; }
};

/// One phase's histogram density estimate.
struct DensityEstimate {
  std::vector<std::uint64_t> counts;
  std::vector<double> density;  // counts / (n_samples * dq)
  std::uint64_t out_of_range = 0;
  std::uint64_t n_samples = 0;
  bool drop_warning = false;  // out-of-range fraction above the warn level
};

/// Histogram density on the given uniform edges. Records out-of-range
/// samples; sets drop_warning above warn_fraction; throws GridTooNarrow
/// above abort_fraction. Empty input yields the flagged all-zero estimate.
DensityEstimate estimate_density(std::span<const double> samples,
                                 const std::vector<double>& bin_edges,
                                 double warn_fraction = 0.001,
                                 double abort_fraction = 0.05);

/// Phase-swept quadrature data with per-theta histogram densities.
struct QuadratureDataset {
  std::vector<double> theta_deg;
  std::vector<double> theta_rad;
  std::vector<double> bin_edges;
  std::vector<std::vector<double>> samples;        // [theta][sample]
  std::vector<std::vector<std::uint64_t>> counts;  // [theta][bin]
  std::vector<std::vector<double>> density;        // [theta][bin]
  std::vector<std::uint64_t> out_of_range;         // [theta]
  std::uint64_t samples_per_theta = 0;
  bool drop_warning = false;
  std::uint64_t seed = 0;      // provenance from the ensemble
  ModelParams params;          // provenance from the ensemble
  std::uint64_t total_trials = 0;
  double efficiency = 0.0;

  std::vector<double> bin_centers() const;
  double dq() const;
};

/// Computes q_theta for every (theta, c_s) pair, reusing the one conditioned
/// ensemble across all phases, and histograms each phase on `hist`.
/// `keep_samples` controls whether raw per-theta samples are retained
/// (needed by the direct sample-mean estimator; densities always kept).
QuadratureDataset sweep_quadratures(const HeraldedEnsemble& ensemble,
                                    const ThetaSweep& sweep,
                                    const HistogramSpec& hist = {},
                                    bool keep_samples = true);

}  // namespace spacsim
