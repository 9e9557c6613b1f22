#include "fdalloc/quality.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace fdalloc {

void QualityModel::validate() const {
  if (!(a > 0.0)) throw std::domain_error("QualityModel: a must be > 0");
  if (!std::isfinite(b)) throw std::domain_error("QualityModel: b must be finite");
  if (!std::isfinite(q_min)) throw std::domain_error("QualityModel: q_min must be finite");
}

double psnr(double rate_kbps, const QualityModel& model) {
  if (!(rate_kbps > 0.0)) throw std::domain_error("psnr: rate must be > 0");
  return model.a * std::log(rate_kbps) + model.b;
}

double rate_for_psnr(double q_db, const QualityModel& model) {
  return std::exp((q_db - model.b) / model.a);
}

double v_min(const QualityModel& model, double theta, double tc) {
  if (!(theta > 0.0 && tc > 0.0)) throw std::domain_error("v_min: theta and tc must be > 0");
  return std::exp(theta * tc * 1000.0 * rate_for_psnr(model.q_min, model));
}

LogFit fit_log_model(std::span<const std::pair<double, double>> samples) {
  if (samples.size() < 2) throw std::domain_error("fit_log_model: need at least 2 samples");
  double sx = 0.0, sy = 0.0;
  for (const auto& [rate, q] : samples) {
    if (!(rate > 0.0)) throw std::domain_error("fit_log_model: rates must be > 0");
    sx += std::log(rate);
    sy += q;
  }
  const double n = static_cast<double>(samples.size());
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [rate, q] : samples) {
    const double dx = std::log(rate) - mx;
    sxx += dx * dx;
    sxy += dx * (q - my);
  }
  if (sxx <= 1e-24 * n) throw std::domain_error("fit_log_model: all rates equal");
  LogFit fit;
  fit.a = sxy / sxx;
  fit.b = my - fit.a * mx;
  return fit;
}

VideoPresets VideoPresets::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("VideoPresets: cannot open " + path);
  nlohmann::json j;
  in >> j;
  VideoPresets p;
  for (const auto& [name, coeffs] : j.items()) {
    p.entries_.emplace_back(name, std::make_pair(coeffs.at("a").get<double>(),
                                                 coeffs.at("b").get<double>()));
  }
  std::sort(p.entries_.begin(), p.entries_.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });
  return p;
}

VideoPresets VideoPresets::load_default() {
  return load(std::string(FDALLOC_DATA_DIR) + "/video_presets.json");
}

std::optional<std::pair<double, double>> VideoPresets::find(const std::string& name) const {
  for (const auto& [n, ab] : entries_)
    if (n == name) return ab;
  return std::nullopt;
}

std::pair<double, double> VideoPresets::at(const std::string& name) const {
  auto ab = find(name);
  if (!ab) throw std::out_of_range("VideoPresets: unknown video '" + name + "'");
  return *ab;
}

QualityModel VideoPresets::model(const std::string& name, double q_min) const {
  auto [a, b] = at(name);
  QualityModel m{a, b, q_min};
  m.validate();
  return m;
}

std::vector<std::string> VideoPresets::names() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [n, ab] : entries_) out.push_back(n);
  return out;
}

}  // namespace fdalloc
