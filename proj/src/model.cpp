#include "spacsim/model.hpp"

#include <cmath>

#include "spacsim/errors.hpp"

namespace spacsim {

void ModelParams::validate() const {
  if (!(sigma > 0.0)) throw InvalidParams("sigma must be > 0");
  if (!(r >= 0.0)) throw InvalidParams("r must be >= 0");
  if (!(gamma >= 0.0)) throw InvalidParams("gamma must be >= 0");
  if (target_conditioned < 1)
    throw InvalidParams("target_conditioned must be >= 1");
  if (max_trials < 1) throw InvalidParams("max_trials must be >= 1");
  if (!std::isfinite(sigma) || !std::isfinite(r) || !std::isfinite(gamma) ||
      !std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
    throw InvalidParams("parameters must be finite");
}

ModePair mode_pair_at(std::uint64_t seed, std::uint64_t trial) {
  const std::uint64_t base = 4 * trial;
  const double u1s = uniform01_at(seed, base);
  const double u2s = uniform01_at(seed, base + 1);
  const double u1i = uniform01_at(seed, base + 2);
  const double u2i = uniform01_at(seed, base + 3);
  return {standard_complex_gaussian(u1s, u2s),
          standard_complex_gaussian(u1i, u2i)};
}

ModePair sample_mode_pair(CounterRng& rng) {
  const double u1s = rng.next_uniform01();
  const double u2s = rng.next_uniform01();
  const double u1i = rng.next_uniform01();
  const double u2i = rng.next_uniform01();
  return {standard_complex_gaussian(u1s, u2s),
          standard_complex_gaussian(u1i, u2i)};
}

std::pair<std::complex<double>, std::complex<double>> input_amplitudes(
    const ModePair& pair, const ModelParams& params) {
  return {params.alpha + params.sigma * pair.z_s, params.sigma * pair.z_i};
}

TransformedPair bogoliubov(std::complex<double> a_s, std::complex<double> a_i,
                           double r) {
  const double ch = std::cosh(r);
  const double sh = std::sinh(r);
  return {ch * a_s + sh * std::conj(a_i), ch * a_i + sh * std::conj(a_s)};
}

bool herald(const TransformedPair& pair, double gamma) {
  // squared comparison keeps the hot loop sqrt-free; the gamma = 0 branch
  // avoids the |b_i|^2 underflow that would otherwise reject subnormal
  // amplitudes, so gamma = 0 accepts exactly the nonzero draws
  if (gamma == 0.0) return pair.b_i != std::complex<double>{0.0, 0.0};
  return std::norm(pair.b_i) > gamma * gamma;
}

HeraldedEnsemble generate_ensemble(const ModelParams& params) {
  params.validate();
  HeraldedEnsemble out;
  out.seed = params.seed;
  out.params = params;
  out.c_s.reserve(params.target_conditioned);

  const double ch = std::cosh(params.r);
  const double sh = std::sinh(params.r);
  const double gamma2 = params.gamma * params.gamma;

  for (std::uint64_t t = 0; t < params.max_trials; ++t) {
    const ModePair pair = mode_pair_at(params.seed, t);
    const std::complex<double> a_s = params.alpha + params.sigma * pair.z_s;
    const std::complex<double> a_i = params.sigma * pair.z_i;
    const std::complex<double> b_s = ch * a_s + sh * std::conj(a_i);
    const std::complex<double> b_i = ch * a_i + sh * std::conj(a_s);
    if (std::norm(b_i) > gamma2) {
      out.c_s.push_back(b_s);
      if (out.c_s.size() >= params.target_conditioned) {
        out.total_trials = t + 1;
        out.accepted = out.c_s.size();
        out.efficiency =
            static_cast<double>(out.accepted) / static_cast<double>(out.total_trials);
        return out;
      }
    }
  }
  throw AbortedAfterMaxTrials(out.c_s.size(), params.target_conditioned,
                              params.max_trials);
}

double quadrature(std::complex<double> c, double theta) {
  return std::sqrt(2.0) *
         (c.real() * std::cos(theta) + c.imag() * std::sin(theta));
}

}  // namespace spacsim
