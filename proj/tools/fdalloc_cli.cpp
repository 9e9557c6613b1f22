// Experiment CLI: solves single configurations and reproduces the bundled
// sweep/table scenarios, emitting machine-readable CSV.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>

#include "fdalloc/config.hpp"

using namespace fdalloc;

namespace {

int emit_results(const ScenarioResults& results, const std::string& out_dir,
                 const std::string& format, bool trace) {
  EmitOptions opts;
  opts.wide = format == "csv" || format == "both";
  opts.long_format = format == "long" || format == "both";
  const ResultTable table = to_table(results);
  for (const auto& path : emit(table, out_dir, opts)) std::cout << "wrote " << path << "\n";
  if (trace) {
    const ResultTable tt = trace_table(results);
    if (!tt.rows.empty()) {
      for (const auto& path : emit(tt, out_dir, {true, false}))
        std::cout << "wrote " << path << "\n";
    }
  }
  int infeasible = 0;
  for (const auto& row : results.rows)
    if (row.status == "infeasible") ++infeasible;
  if (infeasible > 0)
    std::cout << infeasible << " row(s) infeasible (recorded in status column)\n";
  return 0;
}

void print_infeasible(const InfeasibleError& e) {
  nlohmann::json err;
  err["error"] = "infeasible";
  err["detail"] = e.what();
  if (e.pair_index() >= 0) err["pair"] = e.pair_index();
  switch (e.reason()) {
    case InfeasibleError::Reason::PairPowerCeiling: err["reason"] = "pair_power_ceiling"; break;
    case InfeasibleError::Reason::TotalBandwidth: err["reason"] = "total_bandwidth"; break;
    case InfeasibleError::Reason::TargetUnreachable: err["reason"] = "target_unreachable"; break;
    case InfeasibleError::Reason::QualityFloor: err["reason"] = "quality_floor"; break;
  }
  std::cout << err.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted-sum video quality maximization for full-duplex pairs"};
  app.require_subcommand(1);

  std::string presets_path = std::string(FDALLOC_DATA_DIR) + "/video_presets.json";
  std::string out_dir = "out";
  std::string format = "both";
  std::string method = "optimal";
  double eps = -1.0;
  bool trace = false;
  app.add_option("--presets", presets_path, "video preset data file");

  std::string solve_config;
  auto* solve_cmd = app.add_subcommand("solve", "solve one configuration file");
  solve_cmd->add_option("config", solve_config, "JSON system configuration")->required();
  solve_cmd->add_option("--eps", eps, "convergence tolerance override");
  solve_cmd->add_option("--out-dir", out_dir, "output directory");
  solve_cmd->add_option("--format", format, "csv|long|both")
      ->check(CLI::IsMember({"csv", "long", "both"}));
  solve_cmd->add_option("--method", method, "optimal|ebop|both")
      ->check(CLI::IsMember({"optimal", "ebop", "both"}));
  solve_cmd->add_flag("--trace", trace, "also write solver iteration traces");

  std::string scenario_arg;
  auto* scen_cmd = app.add_subcommand("scenario", "run a built-in or file-defined scenario");
  scen_cmd->add_option("name", scenario_arg, "scenario name or JSON file")->required();
  scen_cmd->add_option("--eps", eps, "convergence tolerance override");
  scen_cmd->add_option("--out-dir", out_dir, "output directory");
  scen_cmd->add_option("--format", format, "csv|long|both")
      ->check(CLI::IsMember({"csv", "long", "both"}));
  scen_cmd->add_option("--method", method, "optimal|ebop|both (overrides scenario methods)");
  scen_cmd->add_flag("--trace", trace, "also write solver iteration traces");

  auto* list_cmd = app.add_subcommand("list-scenarios", "list built-in scenarios");

  CLI11_PARSE(app, argc, argv);

  try {
    const VideoPresets presets = VideoPresets::load(presets_path);

    if (list_cmd->parsed()) {
      for (const auto& n : builtin_scenario_names()) std::cout << n << "\n";
      return 0;
    }

    RunOptions run_opts;
    if (eps > 0.0) run_opts.eps = eps;

    if (solve_cmd->parsed()) {
      Scenario s;
      s.name = std::filesystem::path(solve_config).stem().string();
      s.base = load_system_spec(solve_config, presets);
      s.sweep = {"none", {0.0}};
      if (method == "optimal") s.methods = {Method::Optimal};
      else if (method == "ebop") s.methods = {Method::Ebop};
      else s.methods = {Method::Optimal, Method::Ebop};

      // a direct solve reports infeasibility through the exit code
      if (s.methods.size() == 1 && s.methods[0] == Method::Optimal) {
        SystemSpec spec = s.base;
        if (eps > 0.0) spec.eps = eps;
        try {
          init_polyblock(spec);
        } catch (const InfeasibleError& e) {
          print_infeasible(e);
          return 2;
        }
      }
      const ScenarioResults results = run_scenario(s, run_opts);
      std::cout << to_csv(to_table(results));
      return emit_results(results, out_dir, format, trace);
    }

    if (scen_cmd->parsed()) {
      Scenario s;
      if (std::filesystem::exists(scenario_arg) &&
          scenario_arg.find(".json") != std::string::npos) {
        s = load_scenario(scenario_arg, presets);
      } else {
        s = builtin_scenario(scenario_arg, presets);
      }
      if (scen_cmd->count("--method")) {
        if (method == "optimal") s.methods = {Method::Optimal};
        else if (method == "ebop") s.methods = {Method::Ebop};
        else s.methods = {Method::Optimal, Method::Ebop};
      }
      const ScenarioResults results = run_scenario(s, run_opts);
      return emit_results(results, out_dir, format, trace);
    }
  } catch (const InfeasibleError& e) {
    print_infeasible(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
