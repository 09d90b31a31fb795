#include "spacsim/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spacsim/errors.hpp"
#include "spacsim/special_functions.hpp"

namespace spacsim {

namespace {

constexpr int kMaxPatternModes = 32;  // needs table rows up to n_max, stays
                                      // well inside kMaxStableMode

void check_n_max(int n_max) {
  if (n_max < 1) throw InvalidParams("n_max must be >= 1");
  if (n_max > kMaxPatternModes)
    throw TruncationTooLarge("n_max " + std::to_string(n_max) +
                             " exceeds pattern-function stable range " +
                             std::to_string(kMaxPatternModes));
}

/// Composite trapezoid weights for an arbitrary strictly increasing grid.
std::vector<double> trapezoid_weights(std::span<const double> x) {
  std::vector<double> w(x.size(), 0.0);
  if (x.size() < 2) throw InvalidParams("trapezoid needs >= 2 nodes");
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double h = x[i + 1] - x[i];
    w[i] += h / 2;
    w[i + 1] += h / 2;
  }
  return w;
}

void check_sweep_coverage(std::span<const double> theta_rad) {
  if (theta_rad.size() < 2)
    throw SweepIncomplete("sweep has fewer than 2 phases");
  if (theta_rad.front() != 0.0)
    throw SweepIncomplete("sweep must start at theta = 0");
  const double step = theta_rad[1] - theta_rad[0];
  if (theta_rad.back() < std::numbers::pi - step / 2)
    throw SweepIncomplete("sweep stops at " +
                          std::to_string(theta_rad.back()) +
                          " rad, short of pi");
}

void finalize(DensityMatrix& dm) {
  dm.entries = ((dm.entries + dm.entries.adjoint().eval()) / 2.0).eval();
  dm.raw_trace = dm.entries.trace().real();
  if (!(dm.raw_trace > 0.0))
    throw Error("reconstruction produced nonpositive raw trace " +
                std::to_string(dm.raw_trace));
  dm.entries /= dm.raw_trace;
}

ReconstructionMeta meta_from_dataset(const QuadratureDataset& ds,
                                     const std::string& method) {
  ReconstructionMeta meta;
  meta.method = method;
  meta.has_params = ds.samples_per_theta > 0;
  meta.params = ds.params;
  meta.seed = ds.seed;
  meta.samples_per_theta = ds.samples_per_theta;
  meta.total_trials = ds.total_trials;
  meta.efficiency = ds.efficiency;
  meta.theta_deg = ds.theta_deg;
  meta.q_min = ds.bin_edges.front();
  meta.q_max = ds.bin_edges.back();
  meta.bins = static_cast<int>(ds.bin_edges.size() - 1);
  return meta;
}

}  // namespace

const std::vector<double>& PatternTable::at(int n, int m) const {
  return values[static_cast<std::size_t>(n) * static_cast<std::size_t>(n_max) +
                static_cast<std::size_t>(m)];
}

double pattern_calibration() {
  // \int f00_raw psi_0^2 dq on a fine internal grid, f00_raw = (psi_0 phi_0)'.
  // Analytically the integral is 1/2, so kappa = 2; computing it keeps the
  // normalization anchored to the testable identity rather than a constant.
  constexpr int kNodes = 4801;
  constexpr double kHalfWidth = 12.0;
  std::vector<double> q(kNodes);
  for (int i = 0; i < kNodes; ++i)
    q[static_cast<std::size_t>(i)] =
        -kHalfWidth + 2 * kHalfWidth * static_cast<double>(i) / (kNodes - 1);
  const auto psi = regular_table(2, q);
  const auto phi = irregular_table(2, q);
  const auto dpsi = derivative_rows(psi, q, false);
  const auto dphi = derivative_rows(phi, q, true);
  const auto w = trapezoid_weights(q);
  double integral = 0.0;
  for (int i = 0; i < kNodes; ++i) {
    const auto s = static_cast<std::size_t>(i);
    const double f00_raw = dpsi[0][s] * phi[0][s] + psi[0][s] * dphi[0][s];
    integral += w[s] * f00_raw * psi[0][s] * psi[0][s];
  }
  return 1.0 / integral;
}

std::vector<std::vector<double>> pattern_values_at(int n_max,
                                                   std::span<const double> q,
                                                   double calibration) {
  check_n_max(n_max);
  const int rows = n_max + 1;  // derivatives need one extra row
  const auto psi = regular_table(rows, q);
  const auto phi = irregular_table(rows, q);
  const auto dpsi = derivative_rows(psi, q, false);
  const auto dphi = derivative_rows(phi, q, true);

  std::vector<std::vector<double>> values(
      static_cast<std::size_t>(n_max) * static_cast<std::size_t>(n_max),
      std::vector<double>(q.size()));
  for (int n = 0; n < n_max; ++n) {
    for (int m = 0; m < n_max; ++m) {
      auto& f = values[static_cast<std::size_t>(n) *
                           static_cast<std::size_t>(n_max) +
                       static_cast<std::size_t>(m)];
      const auto ns = static_cast<std::size_t>(n);
      const auto ms = static_cast<std::size_t>(m);
      for (std::size_t i = 0; i < q.size(); ++i) {
        // symmetrized product-rule derivative of psi_n phi_m
        f[i] = 0.5 * calibration *
               (dpsi[ns][i] * phi[ms][i] + psi[ns][i] * dphi[ms][i] +
                dpsi[ms][i] * phi[ns][i] + psi[ms][i] * dphi[ns][i]);
      }
    }
  }
  return values;
}

PatternTable build_pattern_table(int n_max, const std::vector<double>& q_grid) {
  check_n_max(n_max);
  if (q_grid.size() < 2) throw InvalidParams("pattern grid needs >= 2 nodes");
  PatternTable table;
  table.n_max = n_max;
  table.q_grid = q_grid;
  table.calibration = pattern_calibration();
  table.values = pattern_values_at(n_max, q_grid, table.calibration);
  return table;
}

std::vector<double> DensityMatrix::diagonal() const {
  std::vector<double> d(static_cast<std::size_t>(n_max));
  for (int i = 0; i < n_max; ++i) d[static_cast<std::size_t>(i)] = entries(i, i).real();
  return d;
}

std::vector<double> DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries);
  std::vector<double> out(static_cast<std::size_t>(n_max));
  for (int i = 0; i < n_max; ++i)
    out[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return out;
}

double DensityMatrix::hermiticity_residual() const {
  return (entries - entries.adjoint()).cwiseAbs().maxCoeff();
}

DensityMatrix reconstruct(const QuadratureDataset& dataset,
                          const PatternTable& patterns) {
  check_sweep_coverage(dataset.theta_rad);
  const auto centers = dataset.bin_centers();
  if (centers.size() != patterns.q_grid.size())
    throw GridMismatch("dataset has " + std::to_string(centers.size()) +
                       " bins, pattern table " +
                       std::to_string(patterns.q_grid.size()));
  for (std::size_t i = 0; i < centers.size(); ++i)
    if (centers[i] != patterns.q_grid[i])
      throw GridMismatch("bin center " + std::to_string(i) +
                         " differs between dataset and pattern table");

  const int n_max = patterns.n_max;
  const std::size_t n_theta = dataset.theta_rad.size();
  const auto wq = trapezoid_weights(centers);
  const auto wt = trapezoid_weights(dataset.theta_rad);

  DensityMatrix dm;
  dm.n_max = n_max;
  dm.entries = Eigen::MatrixXcd::Zero(n_max, n_max);
  for (int n = 0; n < n_max; ++n) {
    for (int m = 0; m < n_max; ++m) {
      const auto& f = patterns.at(n, m);
      std::complex<double> acc{0.0, 0.0};
      for (std::size_t ti = 0; ti < n_theta; ++ti) {
        const auto& p = dataset.density[ti];
        double inner = 0.0;
        for (std::size_t i = 0; i < centers.size(); ++i)
          inner += wq[i] * f[i] * p[i];
        const double phase = static_cast<double>(n - m) * dataset.theta_rad[ti];
        acc += wt[ti] * inner *
               std::complex<double>(std::cos(phase), std::sin(phase));
      }
      dm.entries(n, m) = acc / std::numbers::pi;
    }
  }
  finalize(dm);
  dm.meta = meta_from_dataset(dataset, "pattern-trapezoid");
  return dm;
}

DensityMatrix sample_mean_reconstruct(const QuadratureDataset& dataset,
                                      int n_max) {
  check_n_max(n_max);
  check_sweep_coverage(dataset.theta_rad);
  if (dataset.samples.size() != dataset.theta_rad.size())
    throw InvalidParams(
        "sample_mean_reconstruct needs the dataset's raw samples");

  const double kappa = pattern_calibration();
  const auto wt = trapezoid_weights(dataset.theta_rad);

  DensityMatrix dm;
  dm.n_max = n_max;
  dm.entries = Eigen::MatrixXcd::Zero(n_max, n_max);
  for (std::size_t ti = 0; ti < dataset.theta_rad.size(); ++ti) {
    const auto& q = dataset.samples[ti];
    if (q.empty()) throw InvalidParams("empty sample vector in dataset");
    const auto f = pattern_values_at(n_max, q, kappa);
    const double inv_n = 1.0 / static_cast<double>(q.size());
    for (int n = 0; n < n_max; ++n) {
      for (int m = 0; m < n_max; ++m) {
        const auto& fnm = f[static_cast<std::size_t>(n) *
                                static_cast<std::size_t>(n_max) +
                            static_cast<std::size_t>(m)];
        double mean = 0.0;
        for (double v : fnm) mean += v;
        mean *= inv_n;
        const double phase =
            static_cast<double>(n - m) * dataset.theta_rad[ti];
        dm.entries(n, m) += wt[ti] * mean *
                            std::complex<double>(std::cos(phase),
                                                 std::sin(phase)) /
                            std::numbers::pi;
      }
    }
  }
  finalize(dm);
  dm.meta = meta_from_dataset(dataset, "sample-mean");
  return dm;
}

DensityMatrix forward_map_oracle(const QuadratureDataset& dataset, int n_max,
                                 int fit_modes) {
  check_n_max(n_max);
  if (fit_modes == 0) fit_modes = std::min(n_max + 8, kMaxPatternModes);
  if (fit_modes < n_max)
    throw InvalidParams("forward_map_oracle: fit_modes must be >= n_max");
  check_n_max(fit_modes);
  check_sweep_coverage(dataset.theta_rad);
  const auto centers = dataset.bin_centers();
  const std::size_t n_theta = dataset.theta_rad.size();
  const std::size_t n_bins = centers.size();
  const int nb = fit_modes;
  const auto psi = regular_table(nb, centers);

  // Real parameterization of a Hermitian nb x nb matrix: diagonals, then
  // (Re, Im) of each upper off-diagonal entry.
  const int n_par = nb * nb;
  Eigen::MatrixXd design(static_cast<Eigen::Index>(n_theta * n_bins), n_par);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(n_theta * n_bins));

  for (std::size_t ti = 0; ti < n_theta; ++ti) {
    const double theta = dataset.theta_rad[ti];
    for (std::size_t qi = 0; qi < n_bins; ++qi) {
      const auto row = static_cast<Eigen::Index>(ti * n_bins + qi);
      rhs(row) = dataset.density[ti][qi];
      int col = 0;
      for (int j = 0; j < nb; ++j)
        design(row, col++) = psi[static_cast<std::size_t>(j)][qi] *
                             psi[static_cast<std::size_t>(j)][qi];
      for (int j = 0; j < nb; ++j) {
        for (int k = j + 1; k < nb; ++k) {
          const double base = 2.0 * psi[static_cast<std::size_t>(j)][qi] *
                              psi[static_cast<std::size_t>(k)][qi];
          const double d = static_cast<double>(k - j);
          design(row, col++) = base * std::cos(d * theta);
          design(row, col++) = -base * std::sin(d * theta);
        }
      }
    }
  }

  Eigen::BDCSVD<Eigen::MatrixXd> svd(design,
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double cond = svd.singularValues()(0) /
                      svd.singularValues()(svd.singularValues().size() - 1);
  if (!(cond < 1e8))
    throw IllConditioned("forward-map design matrix condition " +
                             std::to_string(cond),
                         cond);
  const Eigen::VectorXd sol = svd.solve(rhs);

  // Unpack the raw extended fit, then keep its top-left n_max block.
  Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(nb, nb);
  int col = 0;
  for (int j = 0; j < nb; ++j) big(j, j) = sol(col++);
  for (int j = 0; j < nb; ++j) {
    for (int k = j + 1; k < nb; ++k) {
      big(j, k) = std::complex<double>(sol(col), sol(col + 1));
      big(k, j) = std::conj(big(j, k));
      col += 2;
    }
  }

  DensityMatrix dm;
  dm.n_max = n_max;
  dm.entries = big.topLeftCorner(n_max, n_max);
  finalize(dm);
  dm.meta = meta_from_dataset(dataset, "least-squares");
  return dm;
}

QuadratureDataset synthetic_dataset(const Eigen::MatrixXcd& rho,
                                    const ThetaSweep& sweep,
                                    const HistogramSpec& hist) {
  sweep.validate();
  hist.validate();
  const int n_max = static_cast<int>(rho.rows());
  QuadratureDataset ds;
  ds.theta_deg = sweep.theta_deg;
  ds.theta_rad = sweep.theta_rad;
  ds.bin_edges = hist.edges();
  const auto centers = ds.bin_centers();
  const auto psi = regular_table(n_max, centers);
  for (std::size_t ti = 0; ti < sweep.size(); ++ti) {
    const double theta = sweep.theta_rad[ti];
    std::vector<double> p(centers.size(), 0.0);
    for (int j = 0; j < n_max; ++j) {
      for (int k = 0; k < n_max; ++k) {
        const double phase = -static_cast<double>(j - k) * theta;
        const std::complex<double> w =
            rho(j, k) * std::complex<double>(std::cos(phase), std::sin(phase));
        for (std::size_t i = 0; i < centers.size(); ++i)
          p[i] += (w * psi[static_cast<std::size_t>(j)][i] *
                   psi[static_cast<std::size_t>(k)][i])
                      .real();
      }
    }
    ds.density.push_back(std::move(p));
    ds.counts.emplace_back(centers.size(), 0);
    ds.out_of_range.push_back(0);
  }
  return ds;
}

}  // namespace spacsim
