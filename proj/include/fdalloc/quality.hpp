#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fdalloc {

/// Logarithmic PSNR-rate model Q = a*ln(R) + b with R in kbit/s, plus the
/// minimum acceptable quality.
struct QualityModel {
  double a;      ///< dB per ln(kbit/s); must be > 0
  double b;      ///< dB offset
  double q_min;  ///< minimum required PSNR (dB)

  void validate() const;
};

/// Q = a*ln(rate_kbps) + b. Throws std::domain_error for rate <= 0.
double psnr(double rate_kbps, const QualityModel& model);

/// Inverse of psnr: the kbit/s rate achieving quality q_db.
double rate_for_psnr(double q_db, const QualityModel& model);

/// Kernel floor implied by the quality constraint:
/// V_min = exp(theta*tc*1000*exp((q_min-b)/a)).
/// The factor 1000 converts the kbit/s model rate into the bit/s units of
/// the QoS exponent's rate argument.
double v_min(const QualityModel& model, double theta, double tc);

struct LogFit {
  double a;
  double b;
};

/// Ordinary least squares of psnr against ln(rate) over (rate_kbps, psnr_db)
/// samples. Requires >= 2 samples with distinct positive rates.
LogFit fit_log_model(std::span<const std::pair<double, double>> samples);

/// Named (a, b) coefficient presets loaded from a structured text data file
/// mapping video name -> coefficients.
class VideoPresets {
 public:
  static VideoPresets load(const std::string& path);
  /// Loads from the build-time default data directory.
  static VideoPresets load_default();

  std::optional<std::pair<double, double>> find(const std::string& name) const;
  /// find() that throws std::out_of_range with the name on a miss.
  std::pair<double, double> at(const std::string& name) const;
  QualityModel model(const std::string& name, double q_min) const;
  std::vector<std::string> names() const;

 private:
  std::vector<std::pair<std::string, std::pair<double, double>>> entries_;
};

}  // namespace fdalloc
