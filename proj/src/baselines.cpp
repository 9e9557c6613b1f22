#include "fdalloc/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fdalloc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct EdgeResult {
  double value = -kInf;
  double p1 = 0.0, p2 = 0.0;
};

struct PairEval {
  const SystemSpec* sys;
  const PairSpec* pair;
  int k;
  double bw;

  // weighted pair quality at (p1, p2); -inf when a floor is violated
  double objective(double p1, double p2, bool enforce_floor = true) const {
    double total = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double own = i == 0 ? p1 : p2;
      const double other = i == 0 ? p2 : p1;
      const double r = effective_capacity(own, other, bw, sys->radio(k, i), pair->channel);
      if (!(r > 0.0)) return -kInf;
      const double q = psnr(r / 1000.0, pair->quality(i));
      if (enforce_floor && q < pair->quality(i).q_min - 1e-9) return -kInf;
      total += pair->weight(i) * q;
    }
    return total;
  }
};

// Maximizes f on [lo, hi] by a coarse scan followed by golden-section
// refinement of the best bracket; |p - p*| <= tol at return.
template <typename F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, double tol) {
  constexpr int kScan = 33;
  double best_x = lo, best_v = f(lo);
  for (int i = 1; i < kScan; ++i) {
    const double x = lo + (hi - lo) * i / (kScan - 1);
    const double v = f(x);
    if (v > best_v) { best_v = v; best_x = x; }
  }
  const double step = (hi - lo) / (kScan - 1);
  double a = std::max(lo, best_x - step), b = std::min(hi, best_x + step);
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = b - kInvPhi * (b - a), x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + kInvPhi * (b - a); f2 = f(x2);
    } else {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - kInvPhi * (b - a); f1 = f(x1);
    }
  }
  const double xm = 0.5 * (a + b);
  const double fm = f(xm);
  if (fm >= best_v) return {xm, fm};
  return {best_x, best_v};
}

// Feasible sweep interval for the free power along one peak-power edge:
// the free user's floor gives the lower end, the pinned user's interference
// tolerance the upper end. Returns false when the interval is empty.
bool edge_interval(const PairEval& ev, int pin, double& lo, double& hi) {
  const PairSpec& pair = *ev.pair;
  const int free = 1 - pin;
  const LinkRadioParams radio_pin = ev.sys->radio(ev.k, pin);
  const LinkRadioParams radio_free = ev.sys->radio(ev.k, free);
  const double vmin_pin = v_min(pair.quality(pin), pair.theta(pin), ev.sys->tc);
  const double vmin_free = v_min(pair.quality(free), pair.theta(free), ev.sys->tc);
  try {
    lo = invert_v_for_power(vmin_free, pair.p_max(pin), ev.bw, radio_free, pair.channel,
                            pair.p_max(free));
  } catch (const InfeasibleError&) {
    return false;
  }
  const double ln_floor = std::log(vmin_pin);
  if (log_v_value(pair.p_max(pin), 0.0, ev.bw, radio_pin, pair.channel) < ln_floor) return false;
  if (log_v_value(pair.p_max(pin), pair.p_max(free), ev.bw, radio_pin, pair.channel) >= ln_floor) {
    hi = pair.p_max(free);
  } else {
    double a = 0.0, b = pair.p_max(free);
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (a + b);
      const double lv = log_v_value(pair.p_max(pin), mid, ev.bw, radio_pin, pair.channel);
      (lv >= ln_floor ? a : b) = mid;
      if (b - a <= 1e-12 * std::max(1.0, b)) break;
    }
    hi = a;
  }
  return lo <= hi + 1e-12;
}

EdgeResult best_on_edges(const PairEval& ev) {
  EdgeResult best;
  for (int pin = 0; pin < 2; ++pin) {
    double lo, hi;
    if (!edge_interval(ev, pin, lo, hi)) continue;
    auto f = [&](double p) {
      return pin == 0 ? ev.objective(ev.pair->p1_max, p, false)
                      : ev.objective(p, ev.pair->p2_max, false);
    };
    auto [p, v] = golden_max(f, lo, hi, 1e-8);
    if (v > best.value) {
      best.value = v;
      best.p1 = pin == 0 ? ev.pair->p1_max : p;
      best.p2 = pin == 0 ? p : ev.pair->p2_max;
    }
  }
  return best;
}

Allocation assemble(const SystemSpec& spec, const std::vector<double>& bw,
                    const std::vector<double>& p1, const std::vector<double>& p2) {
  const int K = spec.num_pairs();
  Allocation a;
  a.bw = bw;
  a.p1 = p1;
  a.p2 = p2;
  a.rates.resize(2 * K);
  a.psnr.resize(2 * K);
  double wq = 0.0;
  for (int k = 0; k < K; ++k) {
    const PairSpec& p = spec.pairs[k];
    for (int i = 0; i < 2; ++i) {
      const double own = i == 0 ? p1[k] : p2[k];
      const double other = i == 0 ? p2[k] : p1[k];
      const double r = effective_capacity(own, other, bw[k], spec.radio(k, i), p.channel);
      a.rates[i * K + k] = r;
      a.psnr[i * K + k] = r > 0.0 ? psnr(r / 1000.0, p.quality(i)) : -kInf;
      wq += p.weight(i) * (r > 0.0 ? a.psnr[i * K + k] : 0.0);
    }
  }
  a.weighted_sum_quality = wq;
  return a;
}

}  // namespace

void OracleGrid::validate() const {
  if (power_resolution < 2 || bw_resolution < 2 || box_resolution < 2)
    throw std::domain_error("OracleGrid: resolutions must be >= 2");
}

Allocation ebop(const SystemSpec& spec) {
  spec.validate();
  const int K = spec.num_pairs();
  const double bw_each = spec.total_bw / K;
  std::vector<double> bw(K, bw_each), p1(K), p2(K);
  for (int k = 0; k < K; ++k) {
    PairEval ev{&spec, &spec.pairs[k], k, bw_each};
    EdgeResult best = best_on_edges(ev);
    if (!std::isfinite(best.value)) {
      std::ostringstream msg;
      msg << "ebop: pair " << k << " cannot meet its quality floor at B/K";
      throw InfeasibleError(InfeasibleError::Reason::QualityFloor, msg.str(), k);
    }
    p1[k] = best.p1;
    p2[k] = best.p2;
  }
  return assemble(spec, bw, p1, p2);
}

Allocation grid_oracle(const SystemSpec& spec, const OracleGrid& grid) {
  spec.validate();
  grid.validate();
  const int K = spec.num_pairs();
  if (K > 2) throw std::domain_error("grid_oracle: K <= 2 only");

  // best weighted pair quality at a fixed pair bandwidth: peak-power edges
  // at full resolution plus a coarse interior sweep
  auto pair_best = [&](int k, double bw) {
    PairEval ev{&spec, &spec.pairs[k], k, bw};
    const PairSpec& p = spec.pairs[k];
    EdgeResult best;
    for (int pin = 0; pin < 2; ++pin) {
      const double cap = p.p_max(1 - pin);
      for (int i = 0; i < grid.power_resolution; ++i) {
        const double pf = cap * i / (grid.power_resolution - 1);
        const double v =
            pin == 0 ? ev.objective(p.p1_max, pf) : ev.objective(pf, p.p2_max);
        if (v > best.value) {
          best.value = v;
          best.p1 = pin == 0 ? p.p1_max : pf;
          best.p2 = pin == 0 ? pf : p.p2_max;
        }
      }
    }
    for (int i = 0; i < grid.box_resolution; ++i) {
      const double a = p.p1_max * i / (grid.box_resolution - 1);
      for (int j = 0; j < grid.box_resolution; ++j) {
        const double b = p.p2_max * j / (grid.box_resolution - 1);
        const double v = ev.objective(a, b);
        if (v > best.value) best = EdgeResult{v, a, b};
      }
    }
    return best;
  };

  if (K == 1) {
    EdgeResult best = pair_best(0, spec.total_bw);
    if (!std::isfinite(best.value))
      throw InfeasibleError(InfeasibleError::Reason::QualityFloor,
                            "grid_oracle: no feasible grid point");
    return assemble(spec, {spec.total_bw}, {best.p1}, {best.p2});
  }

  double best_total = -kInf;
  std::vector<double> bw(2), p1(2), p2(2);
  for (int s = 1; s < grid.bw_resolution; ++s) {
    const double b1 = spec.total_bw * s / grid.bw_resolution;
    const EdgeResult r1 = pair_best(0, b1);
    if (!std::isfinite(r1.value)) continue;
    const EdgeResult r2 = pair_best(1, spec.total_bw - b1);
    if (!std::isfinite(r2.value)) continue;
    if (r1.value + r2.value > best_total) {
      best_total = r1.value + r2.value;
      bw = {b1, spec.total_bw - b1};
      p1 = {r1.p1, r2.p1};
      p2 = {r1.p2, r2.p2};
    }
  }
  if (!std::isfinite(best_total))
    throw InfeasibleError(InfeasibleError::Reason::QualityFloor,
                          "grid_oracle: no feasible grid point");
  return assemble(spec, bw, p1, p2);
}

}  // namespace fdalloc
