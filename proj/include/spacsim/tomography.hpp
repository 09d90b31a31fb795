#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "spacsim/empirics.hpp"

namespace spacsim {

/// Pattern functions f_nm(q) tabulated on a fixed quadrature grid.
/// f_nm = kappa/2 * d/dq [psi_n phi_m + psi_m phi_n], where kappa is the
/// single calibration constant fixed by \int f_00 psi_0^2 dq = 1
/// (analytically kappa = 2 with Wronskian-1 seeds).
struct PatternTable {
  int n_max = 0;
  std::vector<double> q_grid;
  std::vector<std::vector<double>> values;  // [n * n_max + m] -> f_nm over grid
  double calibration = 0.0;

  const std::vector<double>& at(int n, int m) const;
};

/// Builds the pattern table on `q_grid` for modes 0..n_max-1. The analytic
/// product-rule derivative of the wavefunction recurrences is used (no
/// finite differences). Throws TruncationTooLarge past the stable range.
PatternTable build_pattern_table(int n_max, const std::vector<double>& q_grid);

/// Pattern functions evaluated at arbitrary points (used by the direct
/// sample-mean estimator); returns values[n*n_max+m][i] aligned with q.
std::vector<std::vector<double>> pattern_values_at(
    int n_max, std::span<const double> q, double calibration);

/// The calibration constant kappa, computed by quadrature of the raw f_00
/// against psi_0^2 on an internal fine grid.
double pattern_calibration();

/// Reconstruction provenance carried by DensityMatrix.
struct ReconstructionMeta {
  std::string method;  // "pattern-trapezoid" | "sample-mean" | "least-squares" | ...
  bool has_params = false;
  ModelParams params;
  std::uint64_t seed = 0;
  std::uint64_t samples_per_theta = 0;
  std::uint64_t total_trials = 0;
  double efficiency = 0.0;
  std::vector<double> theta_deg;
  double q_min = 0.0, q_max = 0.0;
  int bins = 0;
};

/// Truncated Fock-basis density matrix with reconstruction metadata.
/// `entries` is Hermitian with unit trace; `raw_trace` is the trace the
/// integral produced before the final normalization.
struct DensityMatrix {
  int n_max = 0;
  Eigen::MatrixXcd entries;
  double raw_trace = 0.0;
  ReconstructionMeta meta;

  std::vector<double> diagonal() const;
  /// Eigenvalues of the Hermitian matrix, ascending (diagnostic only;
  /// negative values are reported, never clipped).
  std::vector<double> eigenvalues() const;
  double hermiticity_residual() const;
};

/// Evaluates the tomographic double integral
///   rho_nm = (1/pi) \int_0^pi dtheta e^{i(n-m)theta} \int dq p_theta(q) f_nm(q)
/// as composite trapezoid rules over the histogram bin centers and the phase
/// sweep, then Hermitian-symmetrizes and normalizes the trace to 1.
/// Throws GridMismatch if dataset and patterns disagree on the q grid and
/// SweepIncomplete if the sweep does not cover [0, pi].
DensityMatrix reconstruct(const QuadratureDataset& dataset,
                          const PatternTable& patterns);

/// Direct sample-mean estimator of the same integral: pattern functions are
/// evaluated at the raw samples instead of integrating the binned density.
/// Requires the dataset to retain its samples. Used for cross-validation.
DensityMatrix sample_mean_reconstruct(const QuadratureDataset& dataset,
                                      int n_max);

/// Independent validation path: least-squares inversion of the forward map
///   p_theta(q) = sum_jk rho_jk psi_j(q) psi_k(q) e^{-i(j-k)theta}
/// over Hermitian matrices. The fit runs over `fit_modes` >= n_max modes
/// (0 selects n_max + 8, capped at the pattern-stability limit): a fit
/// truncated at n_max would L2-project any higher-Fock content of the data
/// into the block and bias it, whereas the pattern estimator is unbiased
/// per element. The returned matrix is the top-left n_max block of the raw
/// extended fit, trace-normalized exactly as `reconstruct` treats its raw
/// integrals; raw_trace records the block trace. Throws IllConditioned if
/// the design condition number exceeds 1e8 (e.g. when the dataset has fewer
/// rows than fit parameters) and SweepIncomplete on partial sweeps.
DensityMatrix forward_map_oracle(const QuadratureDataset& dataset, int n_max,
                                 int fit_modes = 0);

/// Exact conditional densities p_theta(q) of a known truncated state on a
/// grid — test harness for the reconstruction round trip.
QuadratureDataset synthetic_dataset(const Eigen::MatrixXcd& rho,
                                    const ThetaSweep& sweep,
                                    const HistogramSpec& hist);

}  // namespace spacsim
