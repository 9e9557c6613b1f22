#pragma once

#include <cmath>
#include <random>

#include "fdalloc/fd_problem.hpp"
#include "fdalloc/quality.hpp"

namespace fdalloc::testing {

// Table I coefficients, duplicated here so the tests do not depend on the
// data file they are meant to validate.
inline QualityModel bus(double q_min = 20.0) { return {4.7205, 5.4764, q_min}; }
inline QualityModel coastguard(double q_min = 20.0) { return {3.5261, 13.8425, q_min}; }
inline QualityModel akiyo(double q_min = 20.0) { return {5.0545, 17.1145, q_min}; }
inline QualityModel foreman(double q_min = 20.0) { return {4.5006, 13.0780, q_min}; }
inline QualityModel news(double q_min = 20.0) { return {5.6218, 10.0016, q_min}; }

struct RandomTuple {
  double p_own, p_other, bw, z;
  LinkRadioParams radio;
};

// Physically sensible kernel inputs (the solver's operating envelope).
inline RandomTuple random_tuple(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RandomTuple t;
  t.p_own = 0.05 + 4.95 * u(rng);
  t.p_other = 5.0 * u(rng);
  t.bw = std::exp(std::log(5e3) + u(rng) * (std::log(5e5) - std::log(5e3)));
  t.z = 0.5 + 3.0 * u(rng);
  t.radio.theta = 0.005 + 0.145 * u(rng);
  t.radio.mu_other = 0.05 + 0.95 * u(rng);
  t.radio.n0 = 1e-6;
  t.radio.tc = 1e-3;
  return t;
}

// Monte-Carlo estimate of E[exp(-theta*bw*tc*log2(1+p*gamma/(n0*bw+mu*q)))]
// over gamma ~ Exp(z), with its standard error.
struct McEstimate {
  double mean;
  double std_error;
};

inline McEstimate mc_kernel_expectation(double p_own, double p_other, double bw,
                                        const LinkRadioParams& radio, double z, long samples,
                                        std::uint64_t seed, bool stratified = false) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double denom = radio.n0 * bw + radio.mu_other * p_other;
  const double s = radio.theta * bw * radio.tc / std::log(2.0);
  double sum = 0.0, sum2 = 0.0;
  for (long i = 0; i < samples; ++i) {
    // inverse-CDF draw; stratification jitters one uniform per stratum
    const double u = stratified ? (i + uni(rng)) / samples : uni(rng);
    const double g = -z * std::log1p(-u);
    const double f = std::exp(-s * std::log1p(p_own * g / denom));
    sum += f;
    sum2 += f * f;
  }
  const double mean = sum / samples;
  const double var = std::max(0.0, sum2 / samples - mean * mean);
  // the iid formula; conservative for the stratified estimator
  return {mean, std::sqrt(var / samples)};
}

// One-pair system from the paper's single-pair experiments: 0.1 MHz,
// unit-mean fading, Bus uplink / Coastguard downlink, 20 dB floors.
inline SystemSpec one_pair_system(double theta1 = 0.01, double theta2 = 0.01, double w1 = 0.5) {
  SystemSpec spec;
  spec.total_bw = 0.1e6;
  spec.n0 = 1e-6;
  spec.tc = 1e-3;
  spec.eps = 1e-3;
  PairSpec pair{theta1, theta2, 0.1,  0.1, 5.0, 5.0, w1, 1.0 - w1,
                bus(),  coastguard(), ChannelModel::exponential(1.0)};
  spec.pairs.push_back(std::move(pair));
  return spec;
}

// Random feasible K-pair instance for oracle cross-checks.
inline SystemSpec random_system(std::mt19937_64& rng, int num_pairs) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const QualityModel models[5] = {bus(0), coastguard(0), akiyo(0), foreman(0), news(0)};
  for (;;) {
    SystemSpec spec;
    spec.total_bw = (0.05 + 0.15 * u(rng)) * 1e6 * num_pairs;
    spec.n0 = 1e-6;
    spec.tc = 1e-3;
    spec.eps = 1e-3;
    std::vector<double> w(2 * num_pairs);
    double wsum = 0.0;
    for (auto& x : w) {
      x = 0.1 + u(rng);
      wsum += x;
    }
    for (auto& x : w) x /= wsum;
    for (int k = 0; k < num_pairs; ++k) {
      QualityModel q1 = models[static_cast<int>(u(rng) * 5) % 5];
      QualityModel q2 = models[static_cast<int>(u(rng) * 5) % 5];
      q1.q_min = 15.0 + 8.0 * u(rng);
      q2.q_min = 15.0 + 8.0 * u(rng);
      const double mu = 0.05 + 0.25 * u(rng);
      PairSpec pair{0.01 + 0.09 * u(rng),
                    0.01 + 0.09 * u(rng),
                    mu,
                    mu,
                    5.0,
                    5.0,
                    w[2 * k],
                    w[2 * k + 1],
                    q1,
                    q2,
                    ChannelModel::exponential(0.5 + 2.5 * u(rng))};
      spec.pairs.push_back(std::move(pair));
    }
    try {
      init_polyblock(spec);
      return spec;
    } catch (const InfeasibleError&) {
      // draw again
    }
  }
}

}  // namespace fdalloc::testing
