#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "spacsim/rng.hpp"

namespace spacsim {

/// Physical scenario plus simulation controls. Defaults are the squeezed
/// heralded-vacuum scenario (alpha = 0, sigma = 1/sqrt(2), r = 0.4,
/// gamma = 2.5, 2^16 conditioned samples).
struct ModelParams {
  std::complex<double> alpha{0.0, 0.0};
  double sigma = 0.70710678118654752440;  // 1/sqrt(2): vacuum scale
  double r = 0.4;                         // squeezing parameter
  double gamma = 2.5;                     // herald threshold
  std::uint64_t seed = 42;
  std::uint64_t target_conditioned = 65536;
  std::uint64_t max_trials = 1000000000;  // cap before AbortedAfterMaxTrials

  /// Throws InvalidParams unless sigma > 0, r >= 0, gamma >= 0,
  /// target_conditioned >= 1, max_trials >= 1.
  void validate() const;
};

/// One joint draw of the signal/idler fluctuations, each a standard complex
/// Gaussian (E[|z|^2] = 1).
struct ModePair {
  std::complex<double> z_s;
  std::complex<double> z_i;
};

/// Output modes of the two-mode squeezing transform.
struct TransformedPair {
  std::complex<double> b_s;
  std::complex<double> b_i;
};

/// Post-selected signal amplitudes with provenance.
struct HeraldedEnsemble {
  std::vector<std::complex<double>> c_s;  // accepted signal amplitudes
  std::uint64_t total_trials = 0;         // unconditioned draws examined
  std::uint64_t accepted = 0;             // == c_s.size()
  double efficiency = 0.0;                // accepted / total_trials
  std::uint64_t seed = 0;
  ModelParams params;                     // generating scenario
};

/// The mode pair of trial t in the stream of `seed`: trial t consumes
/// counter slots 4t .. 4t+3 as (u1_s, u2_s, u1_i, u2_i). Pure function of
/// (seed, t), so any partition of the trial index space reproduces the
/// serial sequence.
ModePair mode_pair_at(std::uint64_t seed, std::uint64_t trial);

/// Generator-style draw: consumes 4 counter slots from `rng`.
ModePair sample_mode_pair(CounterRng& rng);

/// a_s = alpha + sigma z_s, a_i = sigma z_i.
std::pair<std::complex<double>, std::complex<double>> input_amplitudes(
    const ModePair& pair, const ModelParams& params);

/// b_s = cosh(r) a_s + sinh(r) conj(a_i); b_i = cosh(r) a_i + sinh(r) conj(a_s).
TransformedPair bogoliubov(std::complex<double> a_s, std::complex<double> a_i,
                           double r);

/// Herald fires iff |b_i| > gamma, strictly.
bool herald(const TransformedPair& pair, double gamma);

/// Draws trials 0, 1, 2, ... until target_conditioned samples pass the
/// herald; c_s records the accepted b_s in trial order. total_trials is the
/// 1-based index of the trial that produced the final acceptance. Throws
/// AbortedAfterMaxTrials if max_trials are exhausted first.
HeraldedEnsemble generate_ensemble(const ModelParams& params);

/// q_theta = (c e^{-i theta} + conj(c) e^{+i theta}) / sqrt(2)
///         = sqrt(2) Re[c e^{-i theta}].
double quadrature(std::complex<double> c, double theta);

}  // namespace spacsim
