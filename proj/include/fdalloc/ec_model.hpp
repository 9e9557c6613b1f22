#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "fdalloc/errors.hpp"

namespace fdalloc {

/// Per-link radio constants entering the effective-capacity kernel.
struct LinkRadioParams {
  double theta;     ///< QoS exponent (1/bit); larger = stricter delay constraint
  double mu_other;  ///< suppression factor of the co-located interfering transmitter, in (0,1]
  double n0;        ///< noise power spectral density (W/Hz)
  double tc;        ///< channel coherence time (s)

  void validate() const;
};

/// Fading-gain model of one full-duplex link.
///
/// Two modes: an exponentially distributed power gain with a fixed-order
/// quadrature rule for expectations, or an explicit finite node/weight set
/// (degenerate channels, test fixtures).
class ChannelModel {
 public:
  static ChannelModel exponential(double mean_gain, int quadrature_order = 64);
  static ChannelModel discrete(std::vector<double> gains, std::vector<double> weights);

  bool is_exponential() const { return exponential_; }
  double mean_gain() const { return mean_gain_; }
  int quadrature_order() const;

  /// E[f(gamma)] under this channel's gain distribution, evaluated with the
  /// model's fixed nodes. Exact for polynomials of degree < 2*order in the
  /// exponential mode.
  double expectation(const std::function<double(double)>& f) const;

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  ChannelModel() = default;
  bool exponential_ = true;
  double mean_gain_ = 1.0;
  std::vector<double> nodes_;    // gain-domain nodes (already scaled by the mean in exponential mode)
  std::vector<double> weights_;  // sum to 1
};

/// Nodes and weights of the n-point Gauss-Laguerre rule (weight e^{-x} on
/// [0,inf)), computed once per order via the symmetric tridiagonal Jacobi
/// matrix and cached.
struct GaussLaguerreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLaguerreRule& gauss_laguerre(int order);

/// ln V and its partial derivatives with respect to the physical inputs.
struct EcKernelGrad {
  double log_v = 0.0;
  double d_bw = 0.0;
  double d_p_own = 0.0;
  double d_p_other = 0.0;
};

/// ln of the effective-capacity kernel V. Always >= 0; 0 iff p_own == 0 or bw == 0.
double log_v_value(double p_own, double p_other, double bw, const LinkRadioParams& radio,
                   const ChannelModel& ch);

/// log_v_value plus partials, from a single quadrature pass.
EcKernelGrad log_v_value_grad(double p_own, double p_other, double bw,
                              const LinkRadioParams& radio, const ChannelModel& ch);

/// V = (E_gamma[exp(-theta*bw*tc*log2(1 + p_own*gamma/(n0*bw + mu*p_other)))])^{-1}.
/// Result >= 1, with equality iff p_own == 0 or bw == 0 (continuity limit).
double v_value(double p_own, double p_other, double bw, const LinkRadioParams& radio,
               const ChannelModel& ch);

/// Effective capacity R = ln(V)/(theta*tc) in bit/s.
double effective_capacity(double p_own, double p_other, double bw, const LinkRadioParams& radio,
                          const ChannelModel& ch);

/// Solves v_value(p, fixed_other_power, bw, ...) == target_v for the own power
/// by bisection on [0, p_max]; V is strictly increasing in the own power.
/// Relative tolerance 1e-10 on the attained V.
/// Throws InfeasibleError if even p_max cannot reach target_v.
double invert_v_for_power(double target_v, double fixed_other_power, double bw,
                          const LinkRadioParams& radio, const ChannelModel& ch, double p_max);

/// Solves v_value(p_own, p_other, bw, ...) == target_v for the bandwidth by
/// bracketing and bisection; V is strictly increasing in bw. The search
/// ceiling is 10 * bw_hint (pass the total system bandwidth as the hint).
/// Throws InfeasibleError if the target is unreachable below the ceiling.
double invert_v_for_bandwidth(double target_v, double p_own, double p_other,
                              const LinkRadioParams& radio, const ChannelModel& ch,
                              double bw_hint);

}  // namespace fdalloc
