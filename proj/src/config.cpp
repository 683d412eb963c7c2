#include "spinflip/config.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace spinflip {

namespace {

using nlohmann::json;

const std::set<std::string> kKnownKeys = {
    "schema_version", "g",     "charge_sign", "omega_L",       "eta",     "epsilon",
    "epsilon_sq",     "frame", "gamma_z",     "t_end",         "steps",   "sample_stride",
    "outputs",        "eta_min", "eta_max",   "points"};

const std::set<std::string> kOutputs = {"spin", "field", "trajectory"};

std::string join(const std::vector<ConfigViolation>& violations) {
  std::ostringstream out;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) out << "; ";
    out << violations[i].path << ": " << violations[i].message;
  }
  return out.str();
}

class Reader {
 public:
  explicit Reader(const json& doc) : doc_(doc) {}

  std::vector<ConfigViolation>& violations() { return violations_; }
  void fail(const std::string& path, const std::string& message) {
    violations_.push_back({path, message});
  }

  bool has(const char* key) const { return doc_.contains(key); }

  std::optional<double> number(const char* key, bool required) {
    if (!doc_.contains(key)) {
      if (required) fail(key, "missing required key");
      return std::nullopt;
    }
    const json& v = doc_.at(key);
    if (!v.is_number()) {
      fail(key, "expected a number");
      return std::nullopt;
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
      fail(key, "must be finite");
      return std::nullopt;
    }
    return x;
  }

  std::optional<long long> integer(const char* key) {
    if (!doc_.contains(key)) return std::nullopt;
    const json& v = doc_.at(key);
    if (v.is_number_integer()) return v.get<long long>();
    if (v.is_number_float()) {
      const double x = v.get<double>();
      if (std::isfinite(x) && x == std::floor(x) && std::abs(x) < 1e15) {
        return static_cast<long long>(x);
      }
    }
    fail(key, "expected an integer");
    return std::nullopt;
  }

  std::optional<std::string> string(const char* key) {
    if (!doc_.contains(key)) return std::nullopt;
    const json& v = doc_.at(key);
    if (!v.is_string()) {
      fail(key, "expected a string");
      return std::nullopt;
    }
    return v.get<std::string>();
  }

 private:
  const json& doc_;
  std::vector<ConfigViolation> violations_;
};

}  // namespace

ConfigError::ConfigError(std::vector<ConfigViolation> violations)
    : Error(ErrorCode::config, join(violations)), violations_(std::move(violations)) {}

ConfigError::ConfigError(std::string path, std::string message)
    : ConfigError(std::vector<ConfigViolation>{{std::move(path), std::move(message)}}) {}

std::vector<double> ScanRange::grid() const {
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    out[static_cast<std::size_t>(i)] =
        i == points - 1 ? eta_max : eta_min + (eta_max - eta_min) * i / (points - 1);
  }
  return out;
}

bool RunConfig::operator==(const RunConfig& o) const {
  const bool frame_equal =
      frame.mode == o.frame.mode &&
      (frame.mode == FrameMode::average_rest_frame || frame.gamma_z == o.frame.gamma_z);
  return wave.omega_L == o.wave.omega_L && wave.epsilon_sq == o.wave.epsilon_sq &&
         wave.eta == o.wave.eta && particle.g == o.particle.g &&
         particle.charge_sign == o.particle.charge_sign && frame_equal && sim == o.sim &&
         scan == o.scan;
}

RunConfig parse_config_document(const json& doc) {
  if (!doc.is_object()) {
    throw ConfigError("$", "top level must be an object");
  }
  Reader r(doc);
  for (const auto& [key, value] : doc.items()) {
    if (!kKnownKeys.count(key)) r.fail(key, "unknown key");
  }

  RunConfig c;
  if (auto v = r.integer("schema_version"); v && *v != kSchemaVersion) {
    r.fail("schema_version", "unsupported version " + std::to_string(*v) + " (expected 1)");
  }

  if (auto g = r.number("g", true)) c.particle.g = *g;
  if (auto q = r.integer("charge_sign")) {
    if (*q != 1 && *q != -1) r.fail("charge_sign", "must be +1 or -1");
    else c.particle.charge_sign = static_cast<int>(*q);
  }

  if (auto w = r.number("omega_L", false)) {
    if (*w <= 0.0) r.fail("omega_L", "must be > 0");
    else c.wave.omega_L = *w;
  }
  if (auto eta = r.number("eta", true)) {
    if (*eta < 0.0) r.fail("eta", "must be >= 0");
    else c.wave.eta = *eta;
  }
  if (r.has("epsilon") && r.has("epsilon_sq")) {
    r.fail("epsilon", "give either epsilon or epsilon_sq, not both");
  } else if (r.has("epsilon")) {
    if (auto e = r.number("epsilon", true)) {
      if (*e < 0.0 || *e > 1.0) r.fail("epsilon", "epsilon out of [0,1]");
      else c.wave = WaveConfig::from_epsilon(c.wave.omega_L, *e, c.wave.eta);
    }
  } else if (auto e2 = r.number("epsilon_sq", false)) {
    if (*e2 < 0.0 || *e2 > 1.0) r.fail("epsilon_sq", "epsilon_sq out of [0,1]");
    else c.wave.epsilon_sq = *e2;
  } else {
    r.fail("epsilon_sq", "missing required key (epsilon or epsilon_sq)");
  }

  if (auto mode = r.string("frame")) {
    if (*mode == "average_rest_frame") c.frame.mode = FrameMode::average_rest_frame;
    else if (*mode == "explicit") c.frame.mode = FrameMode::explicit_gamma;
    else r.fail("frame", "expected \"average_rest_frame\" or \"explicit\"");
  }
  if (c.frame.mode == FrameMode::explicit_gamma) {
    if (auto gz = r.number("gamma_z", true)) {
      if (*gz <= 0.0) r.fail("gamma_z", "must be > 0");
      else c.frame.gamma_z = *gz;
    }
  } else if (r.has("gamma_z")) {
    r.fail("gamma_z", "only allowed with frame = \"explicit\"");
  }

  if (auto t = r.number("t_end", false)) {
    if (*t < 0.0) r.fail("t_end", "must be >= 0");
    else c.sim.t_end = *t;
  }
  if (auto n = r.integer("steps")) {
    if (*n < 100 || *n > 100000000) r.fail("steps", "must be in [100, 1e8]");
    else c.sim.steps = static_cast<int>(*n);
  }
  if (auto n = r.integer("sample_stride")) {
    if (*n < 1 || *n > 1000000000) r.fail("sample_stride", "must be >= 1");
    else c.sim.sample_stride = static_cast<int>(*n);
  }
  if (doc.contains("outputs")) {
    const json& outs = doc.at("outputs");
    if (!outs.is_array()) {
      r.fail("outputs", "expected an array of strings");
    } else {
      c.sim.outputs.clear();
      for (std::size_t i = 0; i < outs.size(); ++i) {
        const std::string path = "outputs[" + std::to_string(i) + "]";
        if (!outs[i].is_string() || !kOutputs.count(outs[i].get<std::string>())) {
          r.fail(path, "expected one of \"spin\", \"field\", \"trajectory\"");
        } else {
          c.sim.outputs.push_back(outs[i].get<std::string>());
        }
      }
    }
  }

  const bool any_scan = r.has("eta_min") || r.has("eta_max") || r.has("points");
  if (any_scan) {
    ScanRange scan;
    auto lo = r.number("eta_min", true);
    auto hi = r.number("eta_max", true);
    auto points = r.integer("points");
    if (!r.has("points")) r.fail("points", "missing required key");
    if (lo && *lo <= 0.0) r.fail("eta_min", "must be > 0");
    if (lo && hi && *hi < *lo) r.fail("eta_max", "must be >= eta_min");
    if (points && (*points < 2 || *points > 1000000)) r.fail("points", "must be in [2, 1e6]");
    if (lo && hi && points) {
      scan = {*lo, *hi, static_cast<int>(*points)};
      c.scan = scan;
    }
  }

  if (!r.violations().empty()) throw ConfigError(std::move(r.violations()));
  return c;
}

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError("$", "syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return parse_config_document(doc);
}

json to_json(const RunConfig& c) {
  json doc = json::object();
  doc["schema_version"] = kSchemaVersion;
  doc["g"] = c.particle.g;
  doc["charge_sign"] = c.particle.charge_sign;
  doc["omega_L"] = c.wave.omega_L;
  doc["eta"] = c.wave.eta;
  doc["epsilon_sq"] = c.wave.epsilon_sq;
  if (c.frame.mode == FrameMode::explicit_gamma) {
    doc["frame"] = "explicit";
    doc["gamma_z"] = c.frame.gamma_z;
  } else {
    doc["frame"] = "average_rest_frame";
  }
  doc["t_end"] = c.sim.t_end;
  doc["steps"] = c.sim.steps;
  doc["sample_stride"] = c.sim.sample_stride;
  doc["outputs"] = c.sim.outputs;
  if (c.scan) {
    doc["eta_min"] = c.scan->eta_min;
    doc["eta_max"] = c.scan->eta_max;
    doc["points"] = c.scan->points;
  }
  return doc;
}

std::string serialize_config(const RunConfig& config) { return to_json(config).dump(); }

void apply_override(json& doc, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError("--set", "expected key=value, got \"" + std::string(assignment) + "\"");
  }
  const std::string key(assignment.substr(0, eq));
  const std::string value(assignment.substr(eq + 1));
  if (!doc.is_object()) doc = json::object();
  json parsed = json::parse(value, nullptr, false);
  doc[key] = parsed.is_discarded() ? json(value) : parsed;
}

}  // namespace spinflip
