#include "spacsim/empirics.hpp"

#include <cmath>
#include <numbers>

#include "spacsim/errors.hpp"

namespace spacsim {

namespace {
constexpr double kDegToRad = std::numbers::pi / 180.0;
}

ThetaSweep ThetaSweep::degrees(double start_deg, double stop_deg,
                               double step_deg) {
  if (!(step_deg > 0.0)) throw InvalidParams("theta step must be > 0");
  if (!(stop_deg >= start_deg))
    throw InvalidParams("theta stop must be >= start");
  ThetaSweep sweep;
  const auto n_steps =
      static_cast<std::size_t>(std::floor((stop_deg - start_deg) / step_deg + 0.5));
  for (std::size_t i = 0; i <= n_steps; ++i) {
    const double deg = start_deg + static_cast<double>(i) * step_deg;
    if (deg > stop_deg + step_deg / 2) break;
    sweep.theta_deg.push_back(deg);
    sweep.theta_rad.push_back(deg * kDegToRad);
  }
  sweep.step_rad = step_deg * kDegToRad;
  sweep.validate();
  return sweep;
}

void ThetaSweep::validate() const {
  if (theta_rad.empty()) throw InvalidParams("theta sweep is empty");
  if (theta_rad.size() != theta_deg.size())
    throw InvalidParams("theta sweep degree/radian size mismatch");
  if (theta_rad.front() != 0.0)
    throw InvalidParams("theta sweep must start at 0");
  for (std::size_t i = 1; i < theta_rad.size(); ++i)
    if (!(theta_rad[i] > theta_rad[i - 1]))
      throw InvalidParams("theta sweep must be strictly increasing");
  if (!(step_rad > 0.0)) throw InvalidParams("theta step must be > 0");
  if (theta_rad.back() >= std::numbers::pi + step_rad / 2)
    throw InvalidParams("theta sweep extends past pi");
}

bool ThetaSweep::covers_half_turn() const {
  return !theta_rad.empty() &&
         theta_rad.back() > std::numbers::pi - step_rad / 2;
}

void HistogramSpec::validate() const {
  if (!(q_max > q_min)) throw InvalidParams("q_max must exceed q_min");
  if (bins < 1) throw InvalidParams("bins must be >= 1");
  if (!std::isfinite(q_min) || !std::isfinite(q_max))
    throw InvalidParams("q range must be finite");
}

std::vector<double> HistogramSpec::edges() const {
  std::vector<double> e(static_cast<std::size_t>(bins) + 1);
  for (int i = 0; i <= bins; ++i)
    e[static_cast<std::size_t>(i)] =
        q_min + (q_max - q_min) * static_cast<double>(i) / bins;
  return e;
}

std::vector<double> HistogramSpec::centers() const {
  std::vector<double> c(static_cast<std::size_t>(bins));
  for (int i = 0; i < bins; ++i)
    c[static_cast<std::size_t>(i)] =
        q_min + (q_max - q_min) * (static_cast<double>(i) + 0.5) / bins;
  return c;
}

DensityEstimate estimate_density(std::span<const double> samples,
                                 const std::vector<double>& bin_edges,
                                 double warn_fraction, double abort_fraction) {
  if (bin_edges.size() < 2)
    throw InvalidParams("estimate_density needs at least 2 bin edges");
  const std::size_t n_bins = bin_edges.size() - 1;
  const double lo = bin_edges.front();
  const double hi = bin_edges.back();
  const double dq = (hi - lo) / static_cast<double>(n_bins);

  DensityEstimate est;
  est.counts.assign(n_bins, 0);
  est.density.assign(n_bins, 0.0);
  est.n_samples = samples.size();
  if (samples.empty()) {
    est.drop_warning = true;  // flagged all-zero estimate
    return est;
  }

  for (double q : samples) {
    if (q < lo || q >= hi) {
      // the top edge itself belongs to the last bin
      if (q == hi) {
        ++est.counts[n_bins - 1];
        continue;
      }
      ++est.out_of_range;
      continue;
    }
    auto bin = static_cast<std::size_t>((q - lo) / dq);
    if (bin >= n_bins) bin = n_bins - 1;  // guard roundoff at the top edge
    ++est.counts[bin];
  }

  const double n = static_cast<double>(est.n_samples);
  const double dropped = static_cast<double>(est.out_of_range) / n;
  if (dropped > abort_fraction)
    throw GridTooNarrow(std::to_string(100.0 * dropped) +
                        "% of samples outside [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "]");
  est.drop_warning = dropped > warn_fraction;

  for (std::size_t i = 0; i < n_bins; ++i)
    est.density[i] = static_cast<double>(est.counts[i]) / (n * dq);
  return est;
}

std::vector<double> QuadratureDataset::bin_centers() const {
  std::vector<double> c(bin_edges.size() - 1);
  for (std::size_t i = 0; i + 1 < bin_edges.size(); ++i)
    c[i] = 0.5 * (bin_edges[i] + bin_edges[i + 1]);
  return c;
}

double QuadratureDataset::dq() const {
  return (bin_edges.back() - bin_edges.front()) /
         static_cast<double>(bin_edges.size() - 1);
}

QuadratureDataset sweep_quadratures(const HeraldedEnsemble& ensemble,
                                    const ThetaSweep& sweep,
                                    const HistogramSpec& hist,
                                    bool keep_samples) {
  if (ensemble.c_s.empty()) throw InvalidParams("ensemble is empty");
  sweep.validate();
  hist.validate();

  QuadratureDataset ds;
  ds.theta_deg = sweep.theta_deg;
  ds.theta_rad = sweep.theta_rad;
  ds.bin_edges = hist.edges();
  ds.samples_per_theta = ensemble.c_s.size();
  ds.seed = ensemble.seed;
  ds.params = ensemble.params;
  ds.total_trials = ensemble.total_trials;
  ds.efficiency = ensemble.efficiency;

  const std::size_t n_theta = sweep.size();
  ds.counts.reserve(n_theta);
  ds.density.reserve(n_theta);
  ds.out_of_range.reserve(n_theta);
  if (keep_samples) ds.samples.reserve(n_theta);

  std::vector<double> q(ensemble.c_s.size());
  for (std::size_t ti = 0; ti < n_theta; ++ti) {
    const double theta = sweep.theta_rad[ti];
    const double c = std::cos(theta), s = std::sin(theta);
    const double rt2 = std::sqrt(2.0);
    for (std::size_t k = 0; k < ensemble.c_s.size(); ++k)
      q[k] = rt2 * (ensemble.c_s[k].real() * c + ensemble.c_s[k].imag() * s);
    DensityEstimate est = estimate_density(q, ds.bin_edges);
    ds.counts.push_back(std::move(est.counts));
    ds.density.push_back(std::move(est.density));
    ds.out_of_range.push_back(est.out_of_range);
    ds.drop_warning = ds.drop_warning || est.drop_warning;
    if (keep_samples) ds.samples.push_back(q);
  }
  return ds;
}

}  // namespace spacsim
