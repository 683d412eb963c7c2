#include "spinflip/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>

#include "spinflip/error.hpp"
#include "spinflip/parallel.hpp"

namespace spinflip {

namespace {

Scenario circular_scenario(double eta, double g, double omega_L, int charge_sign) {
  const WaveConfig wave{omega_L, 0.5, eta};
  const ParticleConfig particle{g, charge_sign};
  return make_scenario(wave, particle, FrameConfig::average_rest_frame());
}

void check_grid(std::span<const double> grid) {
  for (double eta : grid) {
    if (!std::isfinite(eta)) throw Error(ErrorCode::invalid_argument, "scan grid entry is not finite");
    if (!(eta > 0.0)) {
      throw Error(ErrorCode::invalid_argument, "scan grid entries must be > 0 (P = 0 has no Rabi period)");
    }
  }
}

}  // namespace

std::pair<double, double> first_maximum(std::span<const SpinSample> series) {
  if (series.empty()) return {0.0, 0.0};
  for (std::size_t k = 1; k + 1 < series.size(); ++k) {
    const double p0 = series[k - 1].p_flip;
    const double p1 = series[k].p_flip;
    const double p2 = series[k + 1].p_flip;
    if (!(p1 >= p0 && p1 > p2)) continue;
    // Parabola q = a h^2 + b h through the neighbours, h relative to sample k.
    const double h0 = series[k - 1].t - series[k].t;
    const double h2 = series[k + 1].t - series[k].t;
    const double s0 = (p0 - p1) / h0;
    const double s2 = (p2 - p1) / h2;
    const double a = (s0 - s2) / (h0 - h2);
    const double b = s0 - a * h0;
    if (!(a < 0.0)) return {series[k].t, p1};
    return {series[k].t - b / (2.0 * a), p1 - b * b / (4.0 * a)};
  }
  const auto best = std::max_element(series.begin(), series.end(),
                                     [](const auto& x, const auto& y) { return x.p_flip < y.p_flip; });
  return {best->t, best->p_flip};
}

ScanRecord scan_point(double eta, double g, const ScanSettings& settings) {
  const double grid[] = {eta};
  check_grid(grid);
  const Scenario s = circular_scenario(eta, g, settings.omega_L, settings.charge_sign);
  const RabiSolution rabi = rabi_solution(s);
  if (!rabi.valid || !(rabi.omega_S > 0.0)) {
    throw Error(ErrorCode::regime, "no analytic Rabi period to size the simulation");
  }

  const double t_end = settings.rabi_periods * std::numbers::pi / rabi.omega_S;
  const auto series = propagate(SpinState::spin_up(), t_end, settings.steps_per_period, s);

  ScanRecord r;
  r.eta = eta;
  r.g = g;
  r.amplitude_analytic = rabi.amplitude;
  r.omega_S_analytic = rabi.omega_S;
  r.steps_per_period = settings.steps_per_period;

  double sample_max = 0.0;
  for (const auto& x : series) {
    sample_max = std::max(sample_max, x.p_flip);
    r.residual = std::max(r.residual, std::abs(x.p_flip - rabi.probability(x.t)));
  }
  const auto [t_peak, p_peak] = first_maximum(series);
  r.amplitude_numeric = std::clamp(std::max(sample_max, p_peak), 0.0, 1.0);
  r.omega_S_numeric = std::numbers::pi / (2.0 * t_peak);
  return r;
}

std::vector<ScanRecord> scan_eta(std::span<const double> grid, double g,
                                 const ScanSettings& settings) {
  check_grid(grid);
  std::vector<ScanRecord> out(grid.size());
  std::vector<std::exception_ptr> errors(grid.size());
  const int workers = resolve_workers(settings.workers);
  const auto n = static_cast<long long>(grid.size());
#pragma omp parallel for schedule(static) num_threads(workers)
  for (long long i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      out[k] = scan_point(grid[k], g, settings);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<ScanRecord> scan_eta_serial(std::span<const double> grid, double g,
                                        const ScanSettings& settings) {
  check_grid(grid);
  std::vector<ScanRecord> out;
  out.reserve(grid.size());
  for (double eta : grid) out.push_back(scan_point(eta, g, settings));
  return out;
}

ResonancePeak find_resonance(double g, const ScanSettings& settings, double bracket_width) {
  if (!std::isfinite(g) || g <= 1.0) {
    throw Error(ErrorCode::no_resonance, "no flip resonance for g <= 1");
  }
  ResonancePeak peak;
  peak.eta_star = std::sqrt(eta_star_sq(g));

  auto amplitude = [&](double eta) {
    ++peak.evaluations;
    return scan_point(eta, g, settings).amplitude_numeric;
  };

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = std::min(0.1, 0.1 * peak.eta_star);
  double b = 3.0 * peak.eta_star;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = amplitude(c);
  double fd = amplitude(d);
  while (b - a >= bracket_width) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = amplitude(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = amplitude(d);
    }
  }
  peak.bracket_lo = a;
  peak.bracket_hi = b;
  peak.eta_peak = 0.5 * (a + b);
  peak.amplitude = amplitude(peak.eta_peak);
  return peak;
}

double oracle_deviation(const RabiCase& c, int steps_per_period) {
  const Scenario s = circular_scenario(c.eta, c.g, c.omega_L, c.charge_sign);
  const RabiSolution rabi = rabi_solution(s);
  const double t_end = c.rabi_periods * std::numbers::pi / rabi.omega_S;
  double worst = 0.0;
  for_each_step(SpinState::spin_up(), t_end, steps_per_period, s,
                [&](double t, const SpinState& psi) {
                  worst = std::max(worst, std::abs(psi.flip_probability() - rabi.probability(t)));
                });
  return worst;
}

ConvergenceStudy convergence_study(std::span<const int> steps_list, const RabiCase& c) {
  if (steps_list.size() < 3) {
    throw Error(ErrorCode::invalid_argument, "convergence study needs at least 3 step counts");
  }
  ConvergenceStudy study;
  for (int steps : steps_list) {
    if (steps < kMinStepsPerPeriod) {
      throw Error(ErrorCode::step_size, "convergence study step counts must be >= 100");
    }
    study.points.push_back({steps, oracle_deviation(c, steps)});
  }

  // Least-squares slope of log(residual) against log(steps).
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  bool degenerate = false;
  for (const auto& p : study.points) {
    if (!(p.residual > 0.0)) degenerate = true;
    const double x = std::log(static_cast<double>(p.steps_per_period));
    const double y = std::log(p.residual);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(study.points.size());
  const double denom = n * sxx - sx * sx;
  study.order = (degenerate || denom == 0.0) ? std::numeric_limits<double>::quiet_NaN()
                                             : -(n * sxy - sx * sy) / denom;
  return study;
}

}  // namespace spinflip
