#include "fdalloc/config.hpp"

#include <json.hpp>

#include <fstream>

namespace fdalloc {

namespace {

using nlohmann::json;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  json j;
  in >> j;
  return j;
}

QualityModel quality_from(const json& jp, int user, const VideoPresets& presets) {
  const std::string su = std::to_string(user);
  const double q_min = jp.value("q_min_" + su, 20.0);
  if (jp.contains("video_" + su))
    return presets.model(jp.at("video_" + su).get<std::string>(), q_min);
  QualityModel m{jp.at("a_" + su).get<double>(), jp.at("b_" + su).get<double>(), q_min};
  m.validate();
  return m;
}

SystemSpec system_from(const json& j, const VideoPresets& presets) {
  SystemSpec spec;
  spec.total_bw = j.at("total_bw").get<double>();
  spec.n0 = j.value("n0", 1e-6);
  spec.tc = j.value("tc", 1e-3);
  spec.eps = j.value("eps", 1e-3);
  for (const auto& jp : j.at("pairs")) {
    PairSpec p{jp.at("theta_1").get<double>(),
               jp.at("theta_2").get<double>(),
               jp.value("mu_1", 0.1),
               jp.value("mu_2", 0.1),
               jp.value("p1_max", 5.0),
               jp.value("p2_max", 5.0),
               jp.at("w_1").get<double>(),
               jp.at("w_2").get<double>(),
               quality_from(jp, 1, presets),
               quality_from(jp, 2, presets),
               ChannelModel::exponential(jp.value("mean_gain", 1.0),
                                         jp.value("quadrature_order", 64))};
    spec.pairs.push_back(std::move(p));
  }
  spec.validate();
  return spec;
}

}  // namespace

SystemSpec load_system_spec(const std::string& path, const VideoPresets& presets) {
  return system_from(load_json(path), presets);
}

Scenario load_scenario(const std::string& path, const VideoPresets& presets) {
  const json j = load_json(path);
  Scenario s;
  s.name = j.at("name").get<std::string>();
  s.base = system_from(j.at("system"), presets);
  if (j.contains("sweep")) {
    s.sweep.path = j.at("sweep").value("path", "none");
    s.sweep.values = j.at("sweep").value("values", std::vector<double>{0.0});
  } else {
    s.sweep = {"none", {0.0}};
  }
  if (j.contains("methods")) {
    for (const auto& m : j.at("methods")) s.methods.push_back(method_from_name(m));
  } else {
    s.methods = {Method::Optimal};
  }
  if (j.contains("oracle_grid")) {
    const auto& g = j.at("oracle_grid");
    s.oracle_grid.power_resolution = g.value("power_resolution", 400);
    s.oracle_grid.bw_resolution = g.value("bw_resolution", 64);
    s.oracle_grid.box_resolution = g.value("box_resolution", 40);
  }
  s.validate();
  return s;
}

}  // namespace fdalloc
