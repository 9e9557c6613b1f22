#include "fdalloc/ec_model.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace fdalloc {

namespace {
constexpr double kLn2 = 0.6931471805599453;
}

void LinkRadioParams::validate() const {
  if (!(theta > 0.0)) throw std::domain_error("LinkRadioParams: theta must be > 0");
  if (!(mu_other > 0.0 && mu_other <= 1.0))
    throw std::domain_error("LinkRadioParams: mu_other must be in (0, 1]");
  if (!(n0 > 0.0)) throw std::domain_error("LinkRadioParams: n0 must be > 0");
  if (!(tc > 0.0)) throw std::domain_error("LinkRadioParams: tc must be > 0");
}

const GaussLaguerreRule& gauss_laguerre(int order) {
  if (order < 2) throw std::domain_error("gauss_laguerre: order must be >= 2");
  static std::mutex mtx;
  static std::map<int, std::unique_ptr<GaussLaguerreRule>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(order);
  if (it != cache.end()) return *it->second;

  // Golub-Welsch: Jacobi matrix of the Laguerre recurrence, diag 2i+1,
  // off-diag i. Eigenvalues seed the nodes; Newton polishing on L_n and the
  // closed-form weights then give full relative accuracy even in the far
  // tail, where eigenvector components underflow the solver's error floor.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
  for (int i = 0; i < order; ++i) {
    jacobi(i, i) = 2.0 * i + 1.0;
    if (i > 0) {
      jacobi(i, i - 1) = static_cast<double>(i);
      jacobi(i - 1, i) = static_cast<double>(i);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi, Eigen::EigenvaluesOnly);

  // Evaluates (L_n(x), L_{n-1}(x)) rescaled by exp(-log_scale) to avoid
  // overflow at large x and order.
  auto laguerre_pair = [](int n, double x, double& ln, double& lnm1, double& log_scale) {
    double a = 1.0, b = 1.0 - x;  // L_0, L_1
    log_scale = 0.0;
    for (int k = 1; k < n; ++k) {
      const double c = ((2.0 * k + 1.0 - x) * b - k * a) / (k + 1.0);
      a = b;
      b = c;
      const double m = std::max(std::abs(a), std::abs(b));
      if (m > 1e150) {
        a /= m;
        b /= m;
        log_scale += std::log(m);
      }
    }
    ln = b;
    lnm1 = a;
  };

  auto rule = std::make_unique<GaussLaguerreRule>();
  rule->nodes.resize(order);
  rule->weights.resize(order);
  const double np1 = order + 1.0;
  for (int i = 0; i < order; ++i) {
    double x = es.eigenvalues()(i);
    double ln, lnm1, scale;
    for (int it = 0; it < 50; ++it) {
      laguerre_pair(order, x, ln, lnm1, scale);
      const double deriv = order * (ln - lnm1) / x;  // L_n'(x)
      const double step = ln / deriv;
      x -= step;
      if (std::abs(step) <= 4e-16 * x) break;
    }
    rule->nodes[i] = x;
    // w = x / ((n+1)^2 L_{n+1}(x)^2), with L_{n+1} from the recurrence
    laguerre_pair(order + 1, x, ln, lnm1, scale);
    const double log_w =
        std::log(x) - 2.0 * std::log(np1) - 2.0 * (std::log(std::abs(ln)) + scale);
    rule->weights[i] = std::exp(log_w);
  }
  auto& ref = *rule;
  cache.emplace(order, std::move(rule));
  return ref;
}

ChannelModel ChannelModel::exponential(double mean_gain, int quadrature_order) {
  if (!(mean_gain > 0.0)) throw std::domain_error("ChannelModel: mean gain must be > 0");
  if (quadrature_order < 2) throw std::domain_error("ChannelModel: quadrature order must be >= 2");
  const auto& rule = gauss_laguerre(quadrature_order);
  ChannelModel ch;
  ch.exponential_ = true;
  ch.mean_gain_ = mean_gain;
  ch.nodes_.resize(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) ch.nodes_[i] = mean_gain * rule.nodes[i];
  ch.weights_ = rule.weights;
  return ch;
}

ChannelModel ChannelModel::discrete(std::vector<double> gains, std::vector<double> weights) {
  if (gains.empty() || gains.size() != weights.size())
    throw std::domain_error("ChannelModel: node/weight size mismatch");
  double mean = 0.0, wsum = 0.0;
  for (std::size_t i = 0; i < gains.size(); ++i) {
    if (gains[i] < 0.0 || weights[i] < 0.0)
      throw std::domain_error("ChannelModel: negative node or weight");
    mean += gains[i] * weights[i];
    wsum += weights[i];
  }
  if (std::abs(wsum - 1.0) > 1e-9) throw std::domain_error("ChannelModel: weights must sum to 1");
  ChannelModel ch;
  ch.exponential_ = false;
  ch.mean_gain_ = mean;
  ch.nodes_ = std::move(gains);
  ch.weights_ = std::move(weights);
  return ch;
}

int ChannelModel::quadrature_order() const { return static_cast<int>(nodes_.size()); }

double ChannelModel::expectation(const std::function<double(double)>& f) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) acc += weights_[i] * f(nodes_[i]);
  return acc;
}

namespace {

struct KernelInputs {
  double s;     // theta*bw*tc/ln2, the SINR exponent
  double beta;  // p_own/denom, the SINR coefficient in gain units
  double denom; // n0*bw + mu*p_other
};

KernelInputs kernel_inputs(double p_own, double p_other, double bw, const LinkRadioParams& radio) {
  if (p_own < 0.0 || p_other < 0.0) throw std::domain_error("ec kernel: negative power");
  if (bw < 0.0) throw std::domain_error("ec kernel: negative bandwidth");
  KernelInputs in;
  in.denom = radio.n0 * bw + radio.mu_other * p_other;
  in.s = radio.theta * bw * radio.tc / kLn2;
  in.beta = (in.denom > 0.0) ? p_own / in.denom : 0.0;
  return in;
}

// I(s,b) = sum_i w_i (1 + b*g_i)^{-s} over explicit gain nodes, with the
// s- and b-direction partial sums needed for gradients.
struct KernelSums {
  double i0 = 0.0;  // I
  double is = 0.0;  // -dI/ds  = sum w f ln(1+b g)
  double ib = 0.0;  // -dI/db / s = sum w f g/(1+b g)
};

KernelSums discrete_sums(double s, double b, const ChannelModel& ch) {
  KernelSums out;
  const auto& g = ch.nodes();
  const auto& w = ch.weights();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double l = std::log1p(b * g[i]);
    const double f = std::exp(-s * l);
    out.i0 += w[i] * f;
    out.is += w[i] * f * l;
    out.ib += w[i] * f * g[i] / (1.0 + b * g[i]);
  }
  return out;
}

// Exponential mode. The raw integrand (1+beta*Z*x)^{-s} e^{-x} can decay far
// faster than e^{-x}, which starves the fixed Laguerre nodes; substituting
// t = x + s*ln(1+c*x) (c = beta*Z) folds the full decay into the e^{-t}
// weight. The transformed integrand (1+c*x)/(1+c*x+s*c) is smooth and
// bounded, and each auxiliary integral against the same kernel reuses the
// transformed nodes.
KernelSums exponential_sums(double s, double c, int order) {
  const auto& rule = gauss_laguerre(order);
  KernelSums out;
  double x = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double t = rule.nodes[i];
    // Solve x + s*ln(1+c*x) = t. The map is increasing and concave, so
    // Newton from any point below the root converges monotonically.
    double x0 = t / (1.0 + s * c);
    if (x > x0) x0 = x;  // previous node's solution is a lower bound
    x = x0;
    double l = std::log1p(c * x);
    for (int it = 0; it < 64; ++it) {
      const double resid = x + s * l - t;
      const double deriv = 1.0 + s * c / (1.0 + c * x);
      const double step = resid / deriv;
      x -= step;
      if (x < 0.0) x = 0.0;
      l = std::log1p(c * x);
      if (std::abs(step) <= 1e-15 * (1.0 + std::abs(x))) break;
    }
    const double onep = 1.0 + c * x;
    const double h = onep / (onep + s * c);  // 1/phi'(x), in (0,1]
    const double wh = rule.weights[i] * h;
    out.i0 += wh;
    out.is += wh * l;
    out.ib += wh * x / onep;
  }
  return out;
}

KernelSums kernel_sums(double s, double beta, const ChannelModel& ch) {
  if (ch.is_exponential()) {
    // Work in the unit-mean variable: gamma = Z*x with x ~ Exp(1).
    KernelSums su = exponential_sums(s, beta * ch.mean_gain(), ch.quadrature_order());
    su.ib *= ch.mean_gain();  // d/d(beta) = Z * d/dc
    return su;
  }
  return discrete_sums(s, beta, ch);
}

}  // namespace

double log_v_value(double p_own, double p_other, double bw, const LinkRadioParams& radio,
                   const ChannelModel& ch) {
  radio.validate();
  const KernelInputs in = kernel_inputs(p_own, p_other, bw, radio);
  if (bw == 0.0 || p_own == 0.0) return 0.0;
  const KernelSums su = kernel_sums(in.s, in.beta, ch);
  return -std::log(su.i0);
}

EcKernelGrad log_v_value_grad(double p_own, double p_other, double bw,
                              const LinkRadioParams& radio, const ChannelModel& ch) {
  radio.validate();
  const KernelInputs in = kernel_inputs(p_own, p_other, bw, radio);
  EcKernelGrad out;
  if (bw == 0.0 || p_own == 0.0) return out;
  const KernelSums su = kernel_sums(in.s, in.beta, ch);
  out.log_v = -std::log(su.i0);
  const double dlnv_ds = su.is / su.i0;             // = -dlnI/ds
  const double dlnv_dbeta = in.s * su.ib / su.i0;   // = -dlnI/dbeta
  const double ds_dbw = radio.theta * radio.tc / kLn2;
  const double dbeta_dbw = -in.beta * radio.n0 / in.denom;
  out.d_bw = dlnv_ds * ds_dbw + dlnv_dbeta * dbeta_dbw;
  out.d_p_own = dlnv_dbeta * in.beta / p_own;
  out.d_p_other = dlnv_dbeta * (-in.beta * radio.mu_other / in.denom);
  return out;
}

double v_value(double p_own, double p_other, double bw, const LinkRadioParams& radio,
               const ChannelModel& ch) {
  return std::exp(log_v_value(p_own, p_other, bw, radio, ch));
}

double effective_capacity(double p_own, double p_other, double bw, const LinkRadioParams& radio,
                          const ChannelModel& ch) {
  return log_v_value(p_own, p_other, bw, radio, ch) / (radio.theta * radio.tc);
}

double invert_v_for_power(double target_v, double fixed_other_power, double bw,
                          const LinkRadioParams& radio, const ChannelModel& ch, double p_max) {
  if (!(target_v >= 1.0)) throw std::domain_error("invert_v_for_power: target must be >= 1");
  if (!(p_max >= 0.0)) throw std::domain_error("invert_v_for_power: p_max must be >= 0");
  const double log_target = std::log(target_v);
  if (log_target == 0.0) return 0.0;
  if (bw <= 0.0)
    throw InfeasibleError(InfeasibleError::Reason::TargetUnreachable,
                          "invert_v_for_power: zero bandwidth cannot reach V > 1");
  auto logv = [&](double p) { return log_v_value(p, fixed_other_power, bw, radio, ch); };
  if (logv(p_max) < log_target)
    throw InfeasibleError(InfeasibleError::Reason::TargetUnreachable,
                          "invert_v_for_power: target above reach at p_max");
  double lo = 0.0, hi = p_max;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double lv = logv(mid);
    if (std::abs(lv - log_target) <= 1e-10 * std::max(1.0, log_target)) return mid;
    (lv < log_target ? lo : hi) = mid;
    if (hi - lo <= 1e-14 * std::max(1.0, hi)) break;
  }
  return 0.5 * (lo + hi);
}

double invert_v_for_bandwidth(double target_v, double p_own, double p_other,
                              const LinkRadioParams& radio, const ChannelModel& ch,
                              double bw_hint) {
  if (!(target_v >= 1.0)) throw std::domain_error("invert_v_for_bandwidth: target must be >= 1");
  if (!(bw_hint > 0.0)) throw std::domain_error("invert_v_for_bandwidth: hint must be > 0");
  const double log_target = std::log(target_v);
  if (log_target == 0.0) return 0.0;
  if (!(p_own > 0.0))
    throw std::domain_error("invert_v_for_bandwidth: p_own must be > 0 for V > 1");
  auto logv = [&](double b) { return log_v_value(p_own, p_other, b, radio, ch); };
  const double ceiling = 10.0 * bw_hint;
  double lo = 0.0, hi = bw_hint / 1024.0;
  while (logv(hi) < log_target) {
    lo = hi;
    hi *= 2.0;
    if (hi > ceiling) {
      if (logv(ceiling) >= log_target) {
        hi = ceiling;
        break;
      }
      throw InfeasibleError(InfeasibleError::Reason::TargetUnreachable,
                            "invert_v_for_bandwidth: target above reach at search ceiling");
    }
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double lv = logv(mid);
    if (std::abs(lv - log_target) <= 1e-10 * std::max(1.0, log_target)) return mid;
    (lv < log_target ? lo : hi) = mid;
    if (hi - lo <= 1e-14 * std::max(1.0, hi)) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace fdalloc
