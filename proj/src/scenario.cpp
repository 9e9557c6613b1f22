#include "fdalloc/scenario.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace fdalloc {

std::string method_name(Method m) {
  switch (m) {
    case Method::Optimal: return "optimal";
    case Method::Ebop: return "ebop";
    case Method::Oracle: return "oracle";
  }
  return "?";
}

Method method_from_name(const std::string& name) {
  if (name == "optimal") return Method::Optimal;
  if (name == "ebop") return Method::Ebop;
  if (name == "oracle") return Method::Oracle;
  throw std::invalid_argument("unknown method '" + name + "'");
}

void Scenario::validate() const {
  base.validate();
  if (sweep.values.empty()) throw std::invalid_argument("scenario: sweep values are empty");
  bool inc = true, dec = true;
  for (std::size_t i = 1; i < sweep.values.size(); ++i) {
    inc = inc && sweep.values[i] >= sweep.values[i - 1];
    dec = dec && sweep.values[i] <= sweep.values[i - 1];
  }
  if (!inc && !dec) throw std::invalid_argument("scenario: sweep values are not monotone");
  if (methods.empty()) throw std::invalid_argument("scenario: no methods selected");
  // reject unknown paths up front
  apply_sweep(base, sweep.path, sweep.values.front());
}

SystemSpec apply_sweep(const SystemSpec& base, const std::string& path, double value) {
  SystemSpec spec = base;
  if (path == "none") return spec;
  int k = -1;
  char field[64] = {0};
  if (std::sscanf(path.c_str(), "pairs.%d.%63s", &k, field) == 2 && k >= 0 &&
      k < spec.num_pairs()) {
    PairSpec& p = spec.pairs[k];
    const std::string f = field;
    if (f == "theta_1") { p.theta_1 = value; return spec; }
    if (f == "theta_2") { p.theta_2 = value; return spec; }
    if (f == "theta_both") { p.theta_1 = p.theta_2 = value; return spec; }
    if (f == "weight_1_complement") {
      const double pair_total = p.w_1 + p.w_2;
      p.w_1 = value;
      p.w_2 = pair_total - value;
      return spec;
    }
    if (f == "pair_weight_equal_split") {
      if (spec.num_pairs() < 2)
        throw std::invalid_argument("pair_weight_equal_split needs K >= 2");
      p.w_1 = p.w_2 = value;
      const double rest = (1.0 - 2.0 * value) / (2.0 * (spec.num_pairs() - 1));
      for (int l = 0; l < spec.num_pairs(); ++l) {
        if (l == k) continue;
        spec.pairs[l].w_1 = spec.pairs[l].w_2 = rest;
      }
      return spec;
    }
  }
  throw std::invalid_argument("unknown sweep path '" + path + "'");
}

namespace {

RowResult run_one(const Scenario& scenario, double x, Method method, double eps) {
  RowResult row;
  row.x = x;
  row.method = method;
  row.eps = eps;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    SystemSpec spec = apply_sweep(scenario.base, scenario.sweep.path, x);
    spec.eps = eps;
    switch (method) {
      case Method::Optimal: {
        auto [alloc, report] = solve_fd(spec);
        row.alloc = std::move(alloc);
        row.iterations = report.iterations;
        row.gap = report.gap;
        row.status = report.status == SolveStatus::IterationCap ? "iteration_cap" : "ok";
        row.report = std::move(report);
        break;
      }
      case Method::Ebop:
        row.alloc = ebop(spec);
        row.status = "ok";
        break;
      case Method::Oracle:
        row.alloc = grid_oracle(spec, scenario.oracle_grid);
        row.status = "ok";
        break;
    }
  } catch (const InfeasibleError& e) {
    row.status = "infeasible";
    row.message = e.what();
  }
  row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
  return row;
}

}  // namespace

ScenarioResults run_scenario(const Scenario& scenario, const RunOptions& options) {
  scenario.validate();
  const double eps = options.eps.value_or(scenario.base.eps);

  struct Job {
    double x;
    Method method;
  };
  std::vector<Job> jobs;
  for (double x : scenario.sweep.values)
    for (Method m : scenario.methods) jobs.push_back({x, m});

  ScenarioResults results;
  results.name = scenario.name;
  results.num_pairs = scenario.base.num_pairs();
  results.rows.resize(jobs.size());

  int workers = options.workers > 0 ? options.workers
                                    : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = std::min<int>(workers, static_cast<int>(jobs.size()));

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      results.rows[i] = run_one(scenario, jobs[i].x, jobs[i].method, eps);
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return results;
}

ResultTable to_table(const ScenarioResults& results) {
  const int K = results.num_pairs;
  ResultTable t;
  t.name = results.name;
  t.columns = {"scenario", "x", "method", "status", "eps", "iterations", "gap", "wall_ms",
               "weighted_sum"};
  for (int k = 1; k <= K; ++k) {
    for (const char* f : {"B", "P1", "P2", "R1", "R2", "Q1", "Q2"})
      t.columns.push_back(std::string(f) + "_" + std::to_string(k));
  }
  for (const auto& row : results.rows) {
    std::vector<Cell> cells;
    cells.push_back(Cell::str(results.name));
    cells.push_back(Cell::num(row.x));
    cells.push_back(Cell::str(method_name(row.method)));
    cells.push_back(Cell::str(row.status));
    cells.push_back(Cell::num(row.eps));
    cells.push_back(Cell::num(static_cast<double>(row.iterations)));
    cells.push_back(Cell::num(row.gap));
    cells.push_back(Cell::num(row.wall_ms));
    if (row.alloc) {
      const Allocation& a = *row.alloc;
      cells.push_back(Cell::num(a.weighted_sum_quality));
      for (int k = 0; k < K; ++k) {
        cells.push_back(Cell::num(a.bw[k]));
        cells.push_back(Cell::num(a.p1[k]));
        cells.push_back(Cell::num(a.p2[k]));
        cells.push_back(Cell::num(a.rates[k]));
        cells.push_back(Cell::num(a.rates[K + k]));
        cells.push_back(Cell::num(a.psnr[k]));
        cells.push_back(Cell::num(a.psnr[K + k]));
      }
    } else {
      cells.push_back(Cell::str(""));
      for (int k = 0; k < 7 * K; ++k) cells.push_back(Cell::str(""));
    }
    t.rows.push_back(std::move(cells));
  }
  return t;
}

ResultTable trace_table(const ScenarioResults& results) {
  ResultTable t;
  t.name = results.name + "_trace";
  t.columns = {"scenario", "x", "iteration", "upper_bound", "best_value", "vertex_count"};
  for (const auto& row : results.rows) {
    if (!row.report) continue;
    for (const auto& tr : row.report->trace) {
      t.rows.push_back({Cell::str(results.name), Cell::num(row.x),
                        Cell::num(static_cast<double>(tr.iteration)), Cell::num(tr.upper_bound),
                        Cell::num(tr.best_value),
                        Cell::num(static_cast<double>(tr.vertex_count))});
    }
  }
  return t;
}

namespace {

PairSpec make_pair(const VideoPresets& presets, const std::string& v1, const std::string& v2,
                   double mean_gain, double theta, double weight, double q_min = 20.0,
                   double p_max = 5.0, double mu = 0.1) {
  PairSpec p{theta,
             theta,
             mu,
             mu,
             p_max,
             p_max,
             weight,
             weight,
             presets.model(v1, q_min),
             presets.model(v2, q_min),
             ChannelModel::exponential(mean_gain)};
  return p;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

}  // namespace

std::vector<std::string> builtin_scenario_names() {
  return {"fig3", "fig4", "fig6", "fig8", "fig10", "table3pairs", "table4pairs"};
}

Scenario builtin_scenario(const std::string& name, const VideoPresets& presets) {
  Scenario s;
  s.name = name;
  s.base.n0 = 1e-6;
  s.base.tc = 1e-3;
  s.base.eps = 1e-3;

  if (name == "fig3" || name == "fig4" || name == "fig6") {
    s.base.total_bw = 0.1e6;
    s.base.pairs = {make_pair(presets, "Bus", "Coastguard", 1.0, 0.01, 0.5)};
    s.methods = {Method::Optimal};
    if (name == "fig3") {
      s.sweep = {"pairs.0.theta_1", linspace(0.01, 0.10, 10)};
    } else if (name == "fig4") {
      s.sweep = {"pairs.0.theta_both", linspace(0.01, 0.10, 10)};
    } else {
      s.sweep = {"pairs.0.weight_1_complement", linspace(0.0, 1.0, 11)};
    }
    return s;
  }
  if (name == "fig8" || name == "fig10") {
    s.base.total_bw = 0.2e6;
    s.base.pairs = {make_pair(presets, "Bus", "Coastguard", 1.0, 0.01, 0.25),
                    make_pair(presets, "Bus", "Coastguard", 3.0, 0.01, 0.25)};
    s.methods = {Method::Optimal, Method::Ebop};
    if (name == "fig8") {
      s.sweep = {"pairs.0.theta_both", linspace(0.01, 0.10, 10)};
    } else {
      s.sweep = {"pairs.0.pair_weight_equal_split", linspace(0.05, 0.45, 9)};
    }
    return s;
  }
  if (name == "table3pairs") {
    s.base.total_bw = 0.3e6;
    s.base.pairs = {make_pair(presets, "Bus", "Coastguard", 1.0, 0.10, 0.05),
                    make_pair(presets, "News", "Akiyo", 2.0, 0.07, 0.30),
                    make_pair(presets, "Bus", "Foreman", 3.0, 0.04, 0.15)};
    s.sweep = {"none", {0.0}};
    s.methods = {Method::Optimal};
    return s;
  }
  if (name == "table4pairs") {
    s.base.total_bw = 0.4e6;
    s.base.pairs = {make_pair(presets, "Bus", "Coastguard", 1.0, 0.10, 0.05),
                    make_pair(presets, "News", "Akiyo", 2.0, 0.07, 0.20),
                    make_pair(presets, "Bus", "Foreman", 3.0, 0.04, 0.05),
                    make_pair(presets, "News", "Foreman", 4.0, 0.01, 0.20)};
    s.sweep = {"none", {0.0}};
    s.methods = {Method::Optimal};
    return s;
  }
  throw std::invalid_argument("unknown built-in scenario '" + name + "'");
}

}  // namespace fdalloc
