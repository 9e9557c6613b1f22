#include "fdalloc/fd_problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fdalloc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double floor_u(const PairSpec& pair, int user, double tc) {
  return std::max(v_min(pair.quality(user), pair.theta(user), tc), 1.0);
}

// Brent's method on a bracketing interval [lo, hi] with f(lo) <= 0 <= f(hi).
// f may return +inf (treated as a positive value).
template <typename F>
double brent_root(F&& f, double lo, double hi, double flo, double fhi, double xtol_rel,
                  int max_iter = 200) {
  double a = lo, b = hi, fa = flo, fb = fhi;
  if (std::abs(fa) < std::abs(fb)) { std::swap(a, b); std::swap(fa, fb); }
  double c = a, fc = fa, d = b - a;
  bool mflag = true;
  for (int it = 0; it < max_iter; ++it) {
    if (fb == 0.0 || std::abs(b - a) <= xtol_rel * std::max(1.0, std::abs(b))) break;
    double s;
    if (std::isfinite(fa) && std::isfinite(fb) && std::isfinite(fc) && fa != fc && fb != fc) {
      s = a * fb * fc / ((fa - fb) * (fa - fc)) + b * fa * fc / ((fb - fa) * (fb - fc)) +
          c * fa * fb / ((fc - fa) * (fc - fb));
    } else if (std::isfinite(fa) && std::isfinite(fb) && fa != fb) {
      s = b - fb * (b - a) / (fb - fa);
    } else {
      s = 0.5 * (a + b);
    }
    const double m = 0.5 * (a + b);
    const bool bad = !(std::isfinite(s)) || (s - m) * (s - b) >= 0.0 ||
                     (mflag && std::abs(s - b) >= 0.5 * std::abs(b - c)) ||
                     (!mflag && std::abs(s - b) >= 0.5 * std::abs(d));
    if (bad) { s = m; mflag = true; } else { mflag = false; }
    const double fs = f(s);
    d = c - b;
    c = b; fc = fb;
    if ((fa < 0.0) == (fs < 0.0)) { a = s; fa = fs; } else { b = s; fb = fs; }
    if (std::abs(fa) < std::abs(fb)) { std::swap(a, b); std::swap(fa, fb); }
  }
  // report the bracket end on the nonpositive side (inside the budget)
  return fb <= 0.0 ? b : a;
}

}  // namespace

void PairSpec::validate() const {
  if (!(theta_1 > 0.0 && theta_2 > 0.0)) throw std::domain_error("PairSpec: theta must be > 0");
  if (!(mu_1 > 0.0 && mu_1 <= 1.0 && mu_2 > 0.0 && mu_2 <= 1.0))
    throw std::domain_error("PairSpec: mu must be in (0, 1]");
  if (!(p1_max > 0.0 && p2_max > 0.0)) throw std::domain_error("PairSpec: p_max must be > 0");
  if (!(w_1 >= 0.0 && w_1 <= 1.0 && w_2 >= 0.0 && w_2 <= 1.0))
    throw std::domain_error("PairSpec: weights must be in [0, 1]");
  quality_1.validate();
  quality_2.validate();
  if (!(channel.mean_gain() > 0.0)) throw std::domain_error("PairSpec: channel mean must be > 0");
}

void SystemSpec::validate() const {
  if (pairs.empty()) throw std::domain_error("SystemSpec: need at least one pair");
  if (!(total_bw > 0.0)) throw std::domain_error("SystemSpec: total_bw must be > 0");
  if (!(n0 > 0.0)) throw std::domain_error("SystemSpec: n0 must be > 0");
  if (!(tc > 0.0)) throw std::domain_error("SystemSpec: tc must be > 0");
  if (!(eps > 0.0)) throw std::domain_error("SystemSpec: eps must be > 0");
  double wsum = 0.0;
  for (const auto& p : pairs) {
    p.validate();
    wsum += p.w_1 + p.w_2;
  }
  if (std::abs(wsum - 1.0) > 1e-9)
    throw std::domain_error("SystemSpec: objective weights must sum to 1");
}

LinkRadioParams SystemSpec::radio(int pair, int user) const {
  const PairSpec& p = pairs[pair];
  return LinkRadioParams{p.theta(user), p.mu_other(user), n0, tc};
}

double phi(std::span<const double> y, const SystemSpec& spec) {
  const int K = spec.num_pairs();
  double total = 0.0;
  for (int k = 0; k < K; ++k) {
    const PairSpec& p = spec.pairs[k];
    for (int i = 0; i < 2; ++i) {
      const double w = p.weight(i);
      if (w == 0.0) continue;
      const double v = y[i * K + k];
      if (!(v > 1.0)) return -kInf;
      const double rate_kbps = std::log(v) / (p.theta(i) * spec.tc) / 1000.0;
      total += w * (p.quality(i).a * std::log(rate_kbps) + p.quality(i).b);
    }
  }
  return total;
}

namespace detail {

namespace {

struct PairLink {
  LinkRadioParams radio;
  double p_max;
};

struct PairCtx {
  const PairSpec* pair;
  const SystemSpec* sys;
  PairLink link[2];
};

PairCtx make_ctx(const PairSpec& pair, const SystemSpec& sys) {
  PairCtx c;
  c.pair = &pair;
  c.sys = &sys;
  for (int i = 0; i < 2; ++i) {
    c.link[i].radio = LinkRadioParams{pair.theta(i), pair.mu_other(i), sys.n0, sys.tc};
    c.link[i].p_max = pair.p_max(i);
  }
  return c;
}

double link_logv(const PairCtx& c, int user, double p_own, double p_other, double bw) {
  return log_v_value(p_own, p_other, bw, c.link[user].radio, c.pair->channel);
}

// Own-power inversion without a cap: grows the bracket geometrically. The
// kernel is unbounded in the own power for bw > 0, so a bracket always
// exists; the 1e15 guard only breaks pathological inputs.
std::optional<double> invert_own_power_uncapped(const PairCtx& c, int user, double ln_target,
                                                double p_other, double bw) {
  if (ln_target <= 0.0) return 0.0;
  if (bw <= 0.0) return std::nullopt;
  double hi = c.link[user].p_max;
  while (link_logv(c, user, hi, p_other, bw) < ln_target) {
    hi *= 2.0;
    if (hi > 1e15) return std::nullopt;
  }
  double lo = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double lv = link_logv(c, user, mid, p_other, bw);
    if (std::abs(lv - ln_target) <= 1e-12 * std::max(1.0, ln_target)) return mid;
    (lv < ln_target ? lo : hi) = mid;
    if (hi - lo <= 1e-15 * std::max(1.0, hi)) break;
  }
  return 0.5 * (lo + hi);
}

std::optional<PairSystemSolution> pair_system_bisection(const PairCtx& c, int pin, double ln_t_pin,
                                                        double ln_t_free, double bw_hint,
                                                        double bw_ceiling) {
  const int free = 1 - pin;
  const double pin_power = c.link[pin].p_max;
  // residual of the pinned user's equation at the bandwidth that satisfies
  // the free user's equation; increasing in bw
  auto resid = [&](double bw) -> std::pair<double, double> {
    auto pf = invert_own_power_uncapped(c, free, ln_t_free, pin_power, bw);
    if (!pf) return {-kInf, 0.0};
    return {link_logv(c, pin, pin_power, *pf, bw) - ln_t_pin, *pf};
  };
  double lo = 0.0, hi = std::max(bw_hint, bw_ceiling * 1e-6) / 1024.0;
  while (resid(hi).first < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > bw_ceiling) {
      if (resid(bw_ceiling).first >= 0.0) {
        hi = bw_ceiling;
        break;
      }
      return std::nullopt;
    }
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double r = resid(mid).first;
    if (std::abs(r) <= 1e-11 * std::max(1.0, std::abs(ln_t_pin))) {
      return PairSystemSolution{mid, resid(mid).second};
    }
    (r < 0.0 ? lo : hi) = mid;
    if (hi - lo <= 1e-13 * std::max(1.0, hi)) break;
  }
  auto r = resid(hi);
  return PairSystemSolution{hi, r.second};
}

std::optional<PairSystemSolution> pair_system_newton(const PairCtx& c, int pin, double ln_t_pin,
                                                     double ln_t_free, double bw_hint,
                                                     double bw_ceiling,
                                                     const PairSystemSolution* warm) {
  const int free = 1 - pin;
  const double pin_power = c.link[pin].p_max;
  double lb = std::log(warm && warm->bw > 0.0 ? warm->bw : bw_hint);
  double lp = std::log(warm && warm->p_free > 0.0 ? warm->p_free
                                                  : std::max(0.5 * c.link[free].p_max, 1e-6));
  const double lb_max = std::log(2.0 * bw_ceiling);
  double f1 = 0.0, f2 = 0.0, prev_norm = kInf;
  for (int it = 0; it < 60; ++it) {
    const double bw = std::exp(lb);
    const double p = std::exp(lp);
    const EcKernelGrad gp = log_v_value_grad(pin_power, p, bw, c.link[pin].radio, c.pair->channel);
    const EcKernelGrad gf = log_v_value_grad(p, pin_power, bw, c.link[free].radio, c.pair->channel);
    f1 = gp.log_v - ln_t_pin;
    f2 = gf.log_v - ln_t_free;
    const double norm = std::max(std::abs(f1), std::abs(f2));
    if (!std::isfinite(norm)) return std::nullopt;
    if (norm <= 1e-11) {
      if (bw > bw_ceiling) return std::nullopt;
      return PairSystemSolution{bw, p};
    }
    // Jacobian in (ln bw, ln p)
    const double j11 = gp.d_bw * bw, j12 = gp.d_p_other * p;
    const double j21 = gf.d_bw * bw, j22 = gf.d_p_own * p;
    const double det = j11 * j22 - j12 * j21;
    if (!std::isfinite(det) || std::abs(det) < 1e-300) return std::nullopt;
    double db = -(f1 * j22 - f2 * j12) / det;
    double dp = -(j11 * f2 - j21 * f1) / det;
    const double step = std::max(std::abs(db), std::abs(dp));
    if (step > 3.0) {
      db *= 3.0 / step;
      dp *= 3.0 / step;
    }
    if (norm > prev_norm * 4.0) return std::nullopt;  // diverging
    prev_norm = std::min(prev_norm, norm);
    lb += db;
    lp += dp;
    if (lb > lb_max) lb = lb_max;
    if (lp > 40.0) lp = 40.0;
    if (lp < -40.0) lp = -40.0;
  }
  return std::nullopt;
}

}  // namespace

std::optional<PairSystemSolution> solve_pair_system(const PairSpec& pair, const SystemSpec& sys,
                                                    int pin, double ln_t1, double ln_t2,
                                                    double bw_hint, double bw_ceiling,
                                                    PairSolveMethod method,
                                                    const PairSystemSolution* warm_start) {
  const PairCtx c = make_ctx(pair, sys);
  const int free = 1 - pin;
  const double ln_t_pin = pin == 0 ? ln_t1 : ln_t2;
  const double ln_t_free = free == 0 ? ln_t1 : ln_t2;

  if (ln_t_pin <= 0.0 && ln_t_free <= 0.0) return PairSystemSolution{0.0, 0.0};
  if (ln_t_free <= 0.0) {
    // free user idle: single bandwidth equation for the pinned user
    try {
      const double bw = invert_v_for_bandwidth(std::exp(ln_t_pin), c.link[pin].p_max, 0.0,
                                               c.link[pin].radio, pair.channel, bw_ceiling / 10.0);
      return PairSystemSolution{bw, 0.0};
    } catch (const InfeasibleError&) {
      return std::nullopt;
    }
  }
  if (ln_t_pin <= 0.0) {
    // pinned user has no floor; the free user's equation alone fixes nothing:
    // bandwidth is minimized by the free user's own single equation
    try {
      const double bw = invert_v_for_bandwidth(std::exp(ln_t_free), 1.0, 0.0, c.link[free].radio,
                                               pair.channel, bw_ceiling / 10.0);
      // recompute the free power at that bandwidth under pinned interference
      auto pf = invert_own_power_uncapped(c, free, ln_t_free, c.link[pin].p_max, bw);
      if (!pf) return std::nullopt;
      return PairSystemSolution{bw, *pf};
    } catch (const InfeasibleError&) {
      return std::nullopt;
    }
  }

  if (method == PairSolveMethod::NewtonWithFallback) {
    auto sol = pair_system_newton(c, pin, ln_t_pin, ln_t_free, bw_hint, bw_ceiling, warm_start);
    if (sol) return sol;
  }
  return pair_system_bisection(c, pin, ln_t_pin, ln_t_free, bw_hint, bw_ceiling);
}

}  // namespace detail

InitBox init_polyblock(const SystemSpec& spec) {
  spec.validate();
  const int K = spec.num_pairs();
  InitBox box;
  box.origin.resize(2 * K);
  for (int k = 0; k < K; ++k)
    for (int i = 0; i < 2; ++i) box.origin[i * K + k] = floor_u(spec.pairs[k], i, spec.tc);

  const double ceiling = 10.0 * spec.total_bw;
  std::vector<double> bmin(K);
  for (int k = 0; k < K; ++k) {
    const PairSpec& pair = spec.pairs[k];
    const double lnu1 = std::log(box.origin[k]);
    const double lnu2 = std::log(box.origin[K + k]);
    double best = kInf;
    for (int pin = 0; pin < 2; ++pin) {
      auto sol = detail::solve_pair_system(pair, spec, pin, lnu1, lnu2,
                                           spec.total_bw / K, ceiling);
      if (sol && sol->p_free <= pair.p_max(1 - pin) * (1.0 + 1e-9)) best = std::min(best, sol->bw);
    }
    if (!std::isfinite(best)) {
      std::ostringstream msg;
      msg << "pair " << k << " cannot meet its quality floors within the power caps";
      throw InfeasibleError(InfeasibleError::Reason::PairPowerCeiling, msg.str(), k);
    }
    bmin[k] = best;
  }
  double bsum = 0.0;
  for (double b : bmin) bsum += b;
  if (bsum > spec.total_bw) {
    std::ostringstream msg;
    msg << "minimum bandwidths sum to " << bsum << " Hz > total " << spec.total_bw << " Hz";
    throw InfeasibleError(InfeasibleError::Reason::TotalBandwidth, msg.str());
  }

  box.vertex.resize(2 * K);
  for (int k = 0; k < K; ++k) {
    const PairSpec& pair = spec.pairs[k];
    const double bw_k = spec.total_bw - (bsum - bmin[k]);
    for (int i = 0; i < 2; ++i) {
      const int other = 1 - i;
      const double ln_u_other = std::log(box.origin[other * K + k]);
      const LinkRadioParams radio_i = spec.radio(k, i);
      const LinkRadioParams radio_o = spec.radio(k, other);
      double vmax;
      try {
        // partner pinned at its floor with this user's power maxed; solve the
        // partner's own power
        const double po = invert_v_for_power(std::exp(ln_u_other), pair.p_max(i), bw_k, radio_o,
                                             pair.channel, pair.p_max(other));
        vmax = v_value(pair.p_max(i), po, bw_k, radio_i, pair.channel);
      } catch (const InfeasibleError&) {
        // the partner cannot hold its floor under max interference even at
        // its own peak: this user's power is capped by the partner's
        // interference tolerance instead
        const double lnv0 = log_v_value(pair.p_max(other), 0.0, bw_k, radio_o, pair.channel);
        if (lnv0 < ln_u_other)
          throw std::logic_error("init_polyblock: floor unreachable after feasibility passed");
        double lo = 0.0, hi = pair.p_max(i);
        for (int it = 0; it < 200; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double lv = log_v_value(pair.p_max(other), mid, bw_k, radio_o, pair.channel);
          (lv >= ln_u_other ? lo : hi) = mid;
          if (hi - lo <= 1e-13 * std::max(1.0, hi)) break;
        }
        vmax = v_value(lo, pair.p_max(other), bw_k, radio_i, pair.channel);
      }
      box.vertex[i * K + k] = vmax;
    }
  }
  return box;
}

namespace {

struct PatternSolution {
  double lambda = -1.0;
  std::vector<double> bw;
  std::vector<double> p_free;
};

// Evaluates sum_k B_k(lambda) - B for one peak-power pattern; +inf when some
// pair's targets are unreachable below the bandwidth ceiling.
class PatternEvaluator {
 public:
  PatternEvaluator(const SystemSpec& spec, std::span<const double> y, std::span<const double> u,
                   int pattern)
      : spec_(spec), y_(y), u_(u), pattern_(pattern), K_(spec.num_pairs()), warm_(K_) {}

  double sum_bw_excess(double lambda, std::vector<double>* bw_out = nullptr,
                       std::vector<double>* pf_out = nullptr) {
    const double ceiling = 10.0 * spec_.total_bw;
    double total = 0.0;
    if (bw_out) bw_out->assign(K_, 0.0);
    if (pf_out) pf_out->assign(K_, 0.0);
    for (int k = 0; k < K_; ++k) {
      const int pin = (pattern_ >> k) & 1;  // bit 0 -> user 1 at peak
      const double t1 = lambda * (y_[k] - u_[k]) + u_[k];
      const double t2 = lambda * (y_[K_ + k] - u_[K_ + k]) + u_[K_ + k];
      auto sol = detail::solve_pair_system(
          spec_.pairs[k], spec_, pin, std::log(t1), std::log(t2), spec_.total_bw / K_, ceiling,
          detail::PairSolveMethod::NewtonWithFallback,
          warm_[k] ? &*warm_[k] : nullptr);
      if (!sol) return kInf;
      warm_[k] = *sol;
      total += sol->bw;
      if (bw_out) (*bw_out)[k] = sol->bw;
      if (pf_out) (*pf_out)[k] = sol->p_free;
    }
    return total - spec_.total_bw;
  }

 private:
  const SystemSpec& spec_;
  std::span<const double> y_;
  std::span<const double> u_;
  int pattern_;
  int K_;
  std::vector<std::optional<detail::PairSystemSolution>> warm_;
};

}  // namespace

FdProjection project(std::span<const double> y, const SystemSpec& spec,
                     std::span<const double> origin) {
  const int K = spec.num_pairs();
  Point yc(y.begin(), y.end());
  for (int m = 0; m < 2 * K; ++m) yc[m] = std::max(yc[m], origin[m]);

  constexpr double kLambdaCap = 1e9;
  PatternSolution best;
  int best_pattern = -1;
  for (int d = 0; d < (1 << K); ++d) {
    PatternEvaluator eval(spec, yc, origin, d);
    const double g0 = eval.sum_bw_excess(0.0);
    if (!(g0 <= 0.0)) continue;
    double lo = 0.0, glo = g0, hi = 1.0, lam;
    for (;;) {
      const double ghi = eval.sum_bw_excess(hi);
      if (ghi > 0.0) {
        lam = brent_root([&](double l) { return eval.sum_bw_excess(l); }, lo, hi, glo, ghi, 1e-11);
        break;
      }
      lo = hi;
      glo = ghi;
      hi *= 2.0;
      if (hi > kLambdaCap) {
        lam = kLambdaCap;  // degenerate ray: the direction never leaves G
        break;
      }
    }
    PatternSolution cand;
    cand.lambda = lam;
    if (eval.sum_bw_excess(lam, &cand.bw, &cand.p_free) > 0.0) {
      // land on the feasible side of the final bracket
      lam *= (1.0 - 1e-9);
      cand.lambda = lam;
      if (eval.sum_bw_excess(lam, &cand.bw, &cand.p_free) > 0.0) continue;
    }
    bool caps_ok = true;
    for (int k = 0; k < K && caps_ok; ++k) {
      const int pin = (d >> k) & 1;
      caps_ok = cand.p_free[k] <= spec.pairs[k].p_max(1 - pin) * (1.0 + 1e-9);
    }
    if (!caps_ok) continue;
    if (best_pattern < 0 || cand.lambda > best.lambda * (1.0 + 1e-12) + 1e-300) {
      best = std::move(cand);
      best_pattern = d;
    }
  }
  if (best_pattern < 0)
    throw NoFeasiblePatternError("project: every peak-power pattern violates a power cap");

  FdProjection out;
  out.lambda = best.lambda;
  out.point.resize(2 * K);
  for (int m = 0; m < 2 * K; ++m)
    out.point[m] = best.lambda * (yc[m] - origin[m]) + origin[m];

  Allocation& a = out.alloc;
  a.bw = best.bw;
  a.p1.resize(K);
  a.p2.resize(K);
  a.rates.resize(2 * K);
  a.psnr.resize(2 * K);
  for (int k = 0; k < K; ++k) {
    const int pin = (best_pattern >> k) & 1;
    a.p1[k] = pin == 0 ? spec.pairs[k].p1_max : best.p_free[k];
    a.p2[k] = pin == 0 ? best.p_free[k] : spec.pairs[k].p2_max;
  }
  double wq = 0.0;
  for (int k = 0; k < K; ++k) {
    const PairSpec& p = spec.pairs[k];
    for (int i = 0; i < 2; ++i) {
      const double own = i == 0 ? a.p1[k] : a.p2[k];
      const double other = i == 0 ? a.p2[k] : a.p1[k];
      const double r = effective_capacity(own, other, a.bw[k], spec.radio(k, i), p.channel);
      a.rates[i * K + k] = r;
      a.psnr[i * K + k] = r > 0.0 ? psnr(r / 1000.0, p.quality(i)) : -kInf;
      wq += p.weight(i) * (r > 0.0 ? a.psnr[i * K + k] : 0.0);
    }
  }
  a.weighted_sum_quality = wq;
  return out;
}

bool feasibility_check(std::span<const double> y, const SystemSpec& spec) {
  const int K = spec.num_pairs();
  for (int k = 0; k < K; ++k) {
    for (int i = 0; i < 2; ++i) {
      const double u = floor_u(spec.pairs[k], i, spec.tc);
      const double v = y[i * K + k];
      if (v < 1.0 - 1e-12) return false;
      if (v < u * (1.0 - 1e-12)) return false;
    }
  }
  Point u(2 * K);
  for (int k = 0; k < K; ++k)
    for (int i = 0; i < 2; ++i) u[i * K + k] = floor_u(spec.pairs[k], i, spec.tc);
  try {
    return project(y, spec, u).lambda >= 1.0 - 1e-9;
  } catch (const NoFeasiblePatternError&) {
    return false;
  }
}

void validate_allocation(const Allocation& alloc, const SystemSpec& spec) {
  const int K = spec.num_pairs();
  double bsum = 0.0;
  for (double b : alloc.bw) bsum += b;
  if (bsum > spec.total_bw + 1e-6) throw std::logic_error("allocation: bandwidth budget exceeded");
  for (int k = 0; k < K; ++k) {
    const PairSpec& p = spec.pairs[k];
    if (alloc.p1[k] < -1e-12 || alloc.p1[k] > p.p1_max * (1.0 + 1e-9))
      throw std::logic_error("allocation: p1 outside [0, p1_max]");
    if (alloc.p2[k] < -1e-12 || alloc.p2[k] > p.p2_max * (1.0 + 1e-9))
      throw std::logic_error("allocation: p2 outside [0, p2_max]");
    for (int i = 0; i < 2; ++i) {
      if (alloc.psnr[i * K + k] < p.quality(i).q_min - 1e-6)
        throw std::logic_error("allocation: quality floor violated");
    }
  }
}

FdMoProblem::FdMoProblem(SystemSpec spec) : spec_(std::move(spec)), box_(init_polyblock(spec_)) {}

MoProblem::Projection FdMoProblem::project(std::span<const double> y) const {
  FdProjection p = fdalloc::project(y, spec_, box_.origin);
  return Projection{p.lambda, std::move(p.point)};
}

bool FdMoProblem::feasible(std::span<const double> y, double tol) const {
  const int K = spec_.num_pairs();
  for (int m = 0; m < 2 * K; ++m)
    if (y[m] < box_.origin[m] * (1.0 - tol)) return false;
  try {
    return fdalloc::project(y, spec_, box_.origin).lambda >= 1.0 - std::max(tol, 1e-9);
  } catch (const NoFeasiblePatternError&) {
    return false;
  }
}

FdProjection FdMoProblem::project_full(std::span<const double> y) const {
  return fdalloc::project(y, spec_, box_.origin);
}

std::pair<Allocation, SolverReport> solve_fd(const SystemSpec& spec) {
  SolverOptions options;
  options.eps = spec.eps;
  return solve_fd(spec, options);
}

std::pair<Allocation, SolverReport> solve_fd(const SystemSpec& spec, SolverOptions options) {
  FdMoProblem problem(spec);  // throws InfeasibleError on an empty feasible set
  SolverReport report = solve(problem, options);
  if (report.best_point.empty())
    throw std::logic_error("solve_fd: solver produced no incumbent");
  FdProjection fp = problem.project_full(report.best_point);
  fp.alloc.weighted_sum_quality = phi(report.best_point, spec);
  return {std::move(fp.alloc), std::move(report)};
}

}  // namespace fdalloc
