#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fdalloc/baselines.hpp"
#include "fdalloc/csv.hpp"
#include "fdalloc/fd_problem.hpp"
#include "fdalloc/quality.hpp"

namespace fdalloc {

enum class Method { Optimal, Ebop, Oracle };

std::string method_name(Method m);
Method method_from_name(const std::string& name);

/// One swept parameter: a registered path plus the values it takes.
/// Supported paths: "none", "pairs.<k>.theta_1", "pairs.<k>.theta_2",
/// "pairs.<k>.theta_both", "pairs.<k>.weight_1_complement" (w1 = v, w2 keeps
/// the pair total), "pairs.<k>.pair_weight_equal_split" (both users of pair k
/// get v; the remainder is spread evenly over the other pairs' users).
struct SweepAxis {
  std::string path = "none";
  std::vector<double> values;
};

struct Scenario {
  std::string name;
  SystemSpec base;
  SweepAxis sweep;
  std::vector<Method> methods;
  OracleGrid oracle_grid;

  void validate() const;
};

/// Returns base with the swept parameter set to `value`.
SystemSpec apply_sweep(const SystemSpec& base, const std::string& path, double value);

struct RowResult {
  double x = 0.0;
  Method method = Method::Optimal;
  std::string status;  // "ok" | "infeasible"
  std::string message;
  std::optional<Allocation> alloc;
  long iterations = 0;
  double gap = 0.0;
  double eps = 0.0;
  double wall_ms = 0.0;
  std::optional<SolverReport> report;  // optimal method only
};

struct ScenarioResults {
  std::string name;
  int num_pairs = 0;
  std::vector<RowResult> rows;
};

struct RunOptions {
  std::optional<double> eps;  // overrides the spec tolerance
  int workers = 0;            // 0 = hardware concurrency
};

/// Runs every (sweep value, method) combination on a bounded worker pool;
/// row order follows the sweep regardless of completion order. Infeasible
/// rows are recorded and the run continues.
ScenarioResults run_scenario(const Scenario& scenario, const RunOptions& options = {});

/// Wide result table: scenario, x, method, status, eps, iterations, gap,
/// wall_ms, weighted_sum, then B/P1/P2/R1/R2/Q1/Q2 per pair.
ResultTable to_table(const ScenarioResults& results);

/// Iteration traces of the optimal rows: row_x, iteration, upper_bound,
/// best_value, vertex_count.
ResultTable trace_table(const ScenarioResults& results);

std::vector<std::string> builtin_scenario_names();
Scenario builtin_scenario(const std::string& name, const VideoPresets& presets);

}  // namespace fdalloc
