#pragma once

#include <span>
#include <vector>

#include "spinflip/spin.hpp"

namespace spinflip {

struct ScanSettings {
  int steps_per_period = kDefaultStepsPerPeriod;
  /// Simulated length per grid point in units of the analytic Rabi period pi/omega_S.
  double rabi_periods = 1.25;
  double omega_L = 1.0;
  int charge_sign = +1;
  int workers = 0;  // 0: resolve_workers()
};

struct ScanRecord {
  double eta = 0.0;
  double g = 0.0;
  double amplitude_analytic = 0.0;
  double amplitude_numeric = 0.0;
  double omega_S_analytic = 0.0;
  double omega_S_numeric = 0.0;
  int steps_per_period = 0;
  double residual = 0.0;  // max_t |P_numeric - P_analytic|

  bool operator==(const ScanRecord&) const = default;
};

/// One grid point: circular polarization, average rest frame.
ScanRecord scan_point(double eta, double g, const ScanSettings& settings);

/// Grid points run on a static OpenMP partition; output keeps grid order.
std::vector<ScanRecord> scan_eta(std::span<const double> grid, double g,
                                 const ScanSettings& settings);
std::vector<ScanRecord> scan_eta_serial(std::span<const double> grid, double g,
                                        const ScanSettings& settings);

struct ResonancePeak {
  double eta_peak = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double amplitude = 0.0;
  double eta_star = 0.0;
  int evaluations = 0;
};

/// Golden-section maximization of the numeric flip amplitude over
/// eta in [0.1, 3 eta_*], stopped once the bracket is narrower than `bracket_width`.
ResonancePeak find_resonance(double g, const ScanSettings& settings, double bracket_width = 1e-3);

/// Circular, average-rest-frame case compared against the analytic oracle.
struct RabiCase {
  double g = 2.0;
  double eta = 2.0;
  double omega_L = 1.0;
  double rabi_periods = 5.0;  // window length in units of pi/omega_S
  int charge_sign = +1;
};

/// max_t |P_numeric(t) - A sin^2(omega_S t)| over the case's window.
double oracle_deviation(const RabiCase& c, int steps_per_period);

struct ConvergencePoint {
  int steps_per_period = 0;
  double residual = 0.0;
};

struct ConvergenceStudy {
  std::vector<ConvergencePoint> points;
  /// -d log(residual) / d log(steps), least squares; NaN if any residual is 0.
  double order = 0.0;
};

ConvergenceStudy convergence_study(std::span<const int> steps_list, const RabiCase& c);

/// Time of the first local maximum of the series, refined by a parabola
/// through the three samples around it. Returns {t_max, p_max}.
std::pair<double, double> first_maximum(std::span<const SpinSample> series);

}  // namespace spinflip
