#include "spinflip/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spinflip/config.hpp"
#include "spinflip/csv.hpp"
#include "spinflip/effective_field.hpp"
#include "spinflip/elliptic.hpp"
#include "spinflip/experiments.hpp"
#include "spinflip/parallel.hpp"
#include "spinflip/spin.hpp"

namespace spinflip {

namespace {

using nlohmann::json;

struct CommonOptions {
  std::string config_path;
  std::string out_path;
  std::vector<std::string> overrides;
  bool json_mirror = false;
};

struct Output {
  std::string command;
  json config;
  Table table;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "JSON configuration file");
  cmd->add_option("--out", opts.out_path, "Output CSV path (default: stdout)");
  cmd->add_option("--set", opts.overrides, "Override a configuration key: key=value");
  cmd->add_flag("--json", opts.json_mirror, "Also write a JSON mirror (<out>.json, or stdout)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("--config", "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RunConfig load_config(const CommonOptions& opts) {
  json doc = json::object();
  if (!opts.config_path.empty()) {
    const std::string text = read_file(opts.config_path);
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ConfigError(opts.config_path, "syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
  }
  for (const auto& assignment : opts.overrides) apply_override(doc, assignment);
  return parse_config_document(doc);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("--out", "cannot write " + path);
  file << text;
}

void emit(const Output& o, const std::string& path, bool json_mirror, std::ostream& out) {
  std::ostringstream csv;
  write_csv(csv, o.table, metadata_line(o.command, o.config));
  const std::string mirror = json_mirror ? table_to_json(o.table, o.command, o.config).dump(1) + "\n" : "";
  if (path.empty()) {
    out << (json_mirror ? mirror : csv.str());
    return;
  }
  write_file(path, csv.str());
  if (json_mirror) write_file(path + ".json", mirror);
}

Scenario scenario_of(const RunConfig& c) { return make_scenario(c.wave, c.particle, c.frame); }

double laser_period(const RunConfig& c) { return 2.0 * std::numbers::pi / c.wave.omega_L; }

bool wants(const RunConfig& c, const char* name) {
  for (const auto& o : c.sim.outputs) {
    if (o == name) return true;
  }
  return false;
}

Table trajectory_table(const std::vector<TrajectorySample>& samples) {
  Table t{{"t", "x", "y", "z", "vx", "vy", "vz", "ax", "ay", "az", "phase"}, {}};
  for (const auto& s : samples) {
    t.rows.push_back({s.t, s.position.x(), s.position.y(), s.position.z(), s.velocity.x(),
                      s.velocity.y(), s.velocity.z(), s.acceleration.x(), s.acceleration.y(),
                      s.acceleration.z(), s.phase});
  }
  return t;
}

Table field_table(const std::vector<FieldSample>& samples) {
  Table t{{"t", "b_rest_x", "b_rest_y", "b_rest_z", "b_thomas_x", "b_thomas_y", "b_thomas_z",
           "bx", "by", "bz"},
          {}};
  for (const auto& f : samples) {
    t.rows.push_back({f.t, f.b_rest.x(), f.b_rest.y(), f.b_rest.z(), f.b_thomas.x(),
                      f.b_thomas.y(), f.b_thomas.z(), f.b_eff.x(), f.b_eff.y(), f.b_eff.z()});
  }
  return t;
}

void require_circular(const RunConfig& c, const char* command) {
  if (!c.wave.circular() || c.frame.mode != FrameMode::average_rest_frame) {
    throw Error(ErrorCode::regime, std::string(command) +
                                       " needs epsilon_sq = 0.5 and the average rest frame; "
                                       "elliptical runs are time-series only (use simulate)");
  }
}

int cmd_simulate(const CommonOptions& opts, const std::string& dump_field, std::ostream& out) {
  const RunConfig c = load_config(opts);
  const Scenario s = scenario_of(c);
  const double t_end = c.sim.t_end * laser_period(c);
  const auto series = propagate(SpinState::spin_up(), t_end, c.sim.steps, s, c.sim.sample_stride);
  const RabiSolution rabi = rabi_solution(s);

  std::vector<double> times;
  times.reserve(series.size());
  for (const auto& x : series) times.push_back(x.t);
  const auto fields = sample_field(times, s);

  Output o{"simulate", to_json(c), {{"t", "p_flip", "p_flip_analytic", "bx", "by", "bz", "norm_err"}, {}}};
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& x = series[i];
    const Vec3& b = fields[i].b_eff;
    o.table.rows.push_back({x.t, x.p_flip,
                            rabi.valid ? rabi.probability(x.t) : std::nan(""), b.x(), b.y(), b.z(),
                            std::abs(x.state.norm_sq() - 1.0)});
  }

  const bool field_requested = wants(c, "field") || !dump_field.empty();
  const bool trajectory_requested = wants(c, "trajectory");
  if ((field_requested && dump_field.empty() && opts.out_path.empty()) ||
      (trajectory_requested && opts.out_path.empty())) {
    throw ConfigError("outputs", "field/trajectory outputs need --out (or --dump-field)");
  }
  if (wants(c, "spin") || (!field_requested && !trajectory_requested)) {
    emit(o, opts.out_path, opts.json_mirror, out);
  }
  if (field_requested) {
    const std::string path = dump_field.empty() ? opts.out_path + ".field.csv" : dump_field;
    emit({"simulate.field", o.config, field_table(fields)}, path, opts.json_mirror, out);
  }
  if (trajectory_requested) {
    emit({"simulate.trajectory", o.config, trajectory_table(sample_trajectory(times, s))},
         opts.out_path + ".trajectory.csv", opts.json_mirror, out);
  }
  return kExitOk;
}

ScanSettings scan_settings(const RunConfig& c) {
  ScanSettings settings;
  settings.steps_per_period = c.sim.steps;
  settings.omega_L = c.wave.omega_L;
  settings.charge_sign = c.particle.charge_sign;
  return settings;
}

int cmd_scan(const CommonOptions& opts, std::ostream& out) {
  const RunConfig c = load_config(opts);
  if (!c.scan) throw ConfigError("eta_min", "scan needs eta_min, eta_max and points");
  require_circular(c, "scan");
  const auto grid = c.scan->grid();
  const auto records = scan_eta(grid, c.particle.g, scan_settings(c));
  Output o{"scan", to_json(c),
           {{"eta", "g", "amp_num", "amp_ana", "omega_s_num", "omega_s_ana", "residual", "steps"}, {}}};
  for (const auto& r : records) {
    o.table.rows.push_back({r.eta, r.g, r.amplitude_numeric, r.amplitude_analytic,
                            r.omega_S_numeric, r.omega_S_analytic, r.residual,
                            static_cast<double>(r.steps_per_period)});
  }
  emit(o, opts.out_path, opts.json_mirror, out);
  return kExitOk;
}

int cmd_resonance(const CommonOptions& opts, double tolerance, std::ostream& out) {
  const RunConfig c = load_config(opts);
  require_circular(c, "resonance");
  const ResonancePeak peak = find_resonance(c.particle.g, scan_settings(c), tolerance);
  json meta = to_json(c);
  meta["bracket_width"] = tolerance;
  Output o{"resonance", meta,
           {{"g", "eta_peak", "eta_star", "bracket_lo", "bracket_hi", "amplitude", "evaluations"}, {}}};
  o.table.rows.push_back({c.particle.g, peak.eta_peak, peak.eta_star, peak.bracket_lo,
                          peak.bracket_hi, peak.amplitude, static_cast<double>(peak.evaluations)});
  emit(o, opts.out_path, opts.json_mirror, out);
  return kExitOk;
}

int cmd_trajectory(const CommonOptions& opts, int per_period, std::ostream& out) {
  if (per_period < 1) throw ConfigError("--samples-per-period", "must be >= 1");
  const RunConfig c = load_config(opts);
  const Scenario s = scenario_of(c);
  const auto times = uniform_times(c.sim.t_end * laser_period(c), laser_period(c), per_period);
  json meta = to_json(c);
  meta["samples_per_period"] = per_period;
  emit({"trajectory", meta, trajectory_table(sample_trajectory(times, s))}, opts.out_path,
       opts.json_mirror, out);
  return kExitOk;
}

int cmd_frame(const CommonOptions& opts, std::ostream& out) {
  const RunConfig c = load_config(opts);
  const DerivedParams d = derive_params(c.wave, c.particle, c.frame);
  Output o{"frame", to_json(c),
           {{"eta", "epsilon_sq", "gamma_z", "mu_sq", "omega_L_prime", "residual"}, {}}};
  o.table.rows.push_back({c.wave.eta, c.wave.epsilon_sq, d.gamma_z, d.mu_sq, d.omega_L_prime,
                          frame_residual(c.wave, d.gamma_z)});
  emit(o, opts.out_path, opts.json_mirror, out);
  return kExitOk;
}

int cmd_elliptic(const std::vector<double>& us, double m, const std::string& out_path,
                 bool json_mirror, std::ostream& out) {
  const elliptic::ModulusSq modulus(m);
  const double K = m < 1.0 ? elliptic::complete_K(modulus) : std::nan("");
  Output o{"elliptic", json{{"u", us}, {"m", m}}, {{"u", "m", "sn", "cn", "dn", "am", "K"}, {}}};
  for (double u : us) {
    const auto j = elliptic::jacobi_eval(u, modulus);
    o.table.rows.push_back({u, m, j.sn, j.cn, j.dn, j.am, K});
  }
  emit(o, out_path, json_mirror, out);
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spin-flip resonance of a charged spin-1/2 particle in an intense plane wave"};
  app.set_version_flag("--version", SPINFLIP_VERSION);
  app.require_subcommand(1);

  CommonOptions opts;
  std::string dump_field;
  double tolerance = 1e-3;
  int per_period = 100;
  std::vector<double> us;
  double m = 0.0;

  auto* simulate = app.add_subcommand("simulate", "Propagate the spin and write P_flip(t)");
  add_common(simulate, opts);
  simulate->add_option("--dump-field", dump_field, "Write the effective-field series here");
  auto* scan = app.add_subcommand("scan", "Flip amplitude and Rabi frequency over an eta grid");
  add_common(scan, opts);
  auto* resonance = app.add_subcommand("resonance", "Locate the resonant field strength");
  add_common(resonance, opts);
  resonance->add_option("--tol", tolerance, "Final bracket width")->check(CLI::PositiveNumber);
  auto* trajectory = app.add_subcommand("trajectory", "Sample the classical orbit");
  add_common(trajectory, opts);
  trajectory->add_option("--samples-per-period", per_period, "Samples per laser period");
  auto* frame = app.add_subcommand("frame", "Solve for the average rest frame");
  add_common(frame, opts);
  auto* ell = app.add_subcommand("elliptic", "Evaluate sn, cn, dn, am and K");
  ell->add_option("--u", us, "Arguments")->required();
  ell->add_option("--m", m, "Parameter m = mu^2")->required();
  ell->add_option("--out", opts.out_path, "Output CSV path (default: stdout)");
  ell->add_flag("--json", opts.json_mirror, "Write JSON instead of / besides CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*simulate) return cmd_simulate(opts, dump_field, out);
    if (*scan) return cmd_scan(opts, out);
    if (*resonance) return cmd_resonance(opts, tolerance, out);
    if (*trajectory) return cmd_trajectory(opts, per_period, out);
    if (*frame) return cmd_frame(opts, out);
    if (*ell) return cmd_elliptic(us, m, opts.out_path, opts.json_mirror, out);
  } catch (const ConfigError& e) {
    for (const auto& v : e.violations()) err << to_string(e.code()) << ": " << v.path << ": " << v.message << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    err << to_string(e.code()) << ": " << e.what() << '\n';
    return e.is_config() ? kExitConfig : kExitRegime;
  }
  err << "usage_error: no subcommand\n" << app.help();
  return kExitConfig;
}

}  // namespace spinflip
