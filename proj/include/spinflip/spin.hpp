#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "spinflip/params.hpp"
#include "spinflip/trajectory.hpp"

namespace spinflip {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;

/// Two-component spinor in the sigma_z basis; "up" points along +z, the
/// propagation direction of the wave.
struct SpinState {
  Complex up{1.0, 0.0};
  Complex down{0.0, 0.0};

  static SpinState spin_up() { return {}; }
  static SpinState spin_down() { return {{0.0, 0.0}, {1.0, 0.0}}; }

  double norm_sq() const { return std::norm(up) + std::norm(down); }
  /// |down|^2: the flip probability for a spin prepared up.
  double flip_probability() const { return std::norm(down); }
};

struct SpinSample {
  double t = 0.0;
  SpinState state;
  double p_flip = 0.0;
};

struct RabiSolution {
  double omega_S = 0.0;
  double amplitude = 0.0;
  bool valid = false;

  double probability(double t) const;
};

/// Smallest accepted steps per laser period for `propagate`.
inline constexpr int kMinStepsPerPeriod = 100;
inline constexpr int kDefaultStepsPerPeriod = 2000;

/// H = -(g q / 4) B' . sigma.
Matrix2c hamiltonian(double t, const Scenario& s);
Matrix2c hamiltonian_from_field(const Vec3& b_eff, const Scenario& s);

/// exp(-i H(t + dt/2) dt) applied to `state`, in closed axis-angle form.
/// Throws ErrorCode::step_size when dt <= 0 or dt |H| >= pi.
SpinState step(const SpinState& state, double t, double dt, const Scenario& s);

/// Walks the fixed-step grid used by `propagate` and calls
/// `observer(t, state)` at t = 0 and after every step.
void for_each_step(const SpinState& state0, double t_end, int steps_per_period, const Scenario& s,
                   const std::function<void(double, const SpinState&)>& observer);

/// Fixed-step propagation on a grid aligned to laser periods, plus one short
/// step to land on t_end. Every `stride`-th step is recorded; the first and
/// last samples always are.
std::vector<SpinSample> propagate(const SpinState& state0, double t_end, int steps_per_period,
                                  const Scenario& s, int stride = 1);

/// Laser-period step: 2 pi / (omega_L * steps_per_period).
double step_length(const Scenario& s, int steps_per_period);

RabiSolution rabi_solution(const Scenario& s);

/// A sin^2(omega_S t). ErrorCode::regime outside circular / average rest frame.
double rabi_analytic(const Scenario& s, double t);

struct RotatingFrameResidual {
  /// Largest one-interval mismatch between the co-rotating numeric states and
  /// the constant rotating-frame Hamiltonian applied over that interval.
  double residual = 0.0;
  /// Largest mismatch against the closed form started from the first sample.
  double global_deviation = 0.0;
};

/// Moves the series into the frame co-rotating at omega_L about z, where the
/// Hamiltonian is time independent, and compares with its closed-form evolution.
RotatingFrameResidual rotating_frame_check(std::span<const SpinSample> series, const Scenario& s);

}  // namespace spinflip
