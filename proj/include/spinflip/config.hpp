#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "spinflip/error.hpp"
#include "spinflip/params.hpp"

namespace spinflip {

inline constexpr int kSchemaVersion = 1;

struct SimSettings {
  double t_end = 5.0;  // laser periods
  int steps = 2000;    // steps per laser period
  int sample_stride = 1;
  std::vector<std::string> outputs{"spin"};

  bool operator==(const SimSettings&) const = default;
};

struct ScanRange {
  double eta_min = 0.0;
  double eta_max = 0.0;
  int points = 0;

  std::vector<double> grid() const;
  bool operator==(const ScanRange&) const = default;
};

/// Flat JSON object. Recognized keys:
///   schema_version (1), g, charge_sign, omega_L, eta, epsilon | epsilon_sq,
///   frame ("average_rest_frame" | "explicit"), gamma_z,
///   t_end, steps, sample_stride, outputs ["spin","field","trajectory"],
///   eta_min, eta_max, points.
/// g, eta and one of epsilon / epsilon_sq are required.
struct RunConfig {
  WaveConfig wave;
  ParticleConfig particle;
  FrameConfig frame;
  SimSettings sim;
  std::optional<ScanRange> scan;

  bool operator==(const RunConfig& other) const;
};

struct ConfigViolation {
  std::string path;
  std::string message;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<ConfigViolation> violations);
  ConfigError(std::string path, std::string message);
  const std::vector<ConfigViolation>& violations() const { return violations_; }

 private:
  std::vector<ConfigViolation> violations_;
};

/// Collects every violation before throwing ConfigError.
RunConfig parse_config(std::string_view text);
RunConfig parse_config_document(const nlohmann::json& doc);

nlohmann::json to_json(const RunConfig& config);
std::string serialize_config(const RunConfig& config);

/// Applies a `key=value` override to an unvalidated document. The value is
/// read as JSON when it parses, else as a plain string.
void apply_override(nlohmann::json& doc, std::string_view assignment);

}  // namespace spinflip
