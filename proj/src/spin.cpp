#include "spinflip/spin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "spinflip/effective_field.hpp"
#include "spinflip/error.hpp"

namespace spinflip {

namespace {

constexpr Complex kI{0.0, 1.0};

// H = h . sigma with h = -(g q / 4) b.
Vec3 hamiltonian_vector(const Vec3& b_eff, const Scenario& s) {
  return -(s.particle.g * s.particle.charge_sign / 4.0) * b_eff;
}

// exp(-i h.sigma tau) state, for constant h.
//
// Built and applied in long double. A circularly polarized drive repeats the
// same rotation every step, so any rounding in c^2 + |k|^2 would accumulate
// linearly in the norm; only the final rounding to double is left, and that
// varies from step to step.
SpinState rotate(const SpinState& state, const Vec3& h, double tau) {
  using Real = long double;
  using C = std::complex<Real>;
  const Real hx = h.x(), hy = h.y(), hz = h.z();
  const Real norm = std::sqrt(hx * hx + hy * hy + hz * hz);
  if (norm == 0.0L || tau == 0.0) return state;
  const Real angle = norm * static_cast<Real>(tau);
  const Real c = std::cos(angle);
  const Real s = std::sin(angle) / norm;
  const Real kx = s * hx, ky = s * hy, kz = s * hz;
  const C a(c, -kz);
  const C b(-ky, -kx);  // -i (kx - i ky)
  const C d(ky, -kx);   // -i (kx + i ky)
  const C e(c, kz);
  const C up(state.up.real(), state.up.imag());
  const C down(state.down.real(), state.down.imag());
  const C new_up = a * up + b * down;
  const C new_down = d * up + e * down;
  return {Complex(static_cast<double>(new_up.real()), static_cast<double>(new_up.imag())),
          Complex(static_cast<double>(new_down.real()), static_cast<double>(new_down.imag()))};
}

double distance(const SpinState& x, const SpinState& y) {
  return std::sqrt(std::norm(x.up - y.up) + std::norm(x.down - y.down));
}

}  // namespace

double RabiSolution::probability(double t) const {
  const double s = std::sin(omega_S * t);
  return amplitude * s * s;
}

Matrix2c hamiltonian_from_field(const Vec3& b_eff, const Scenario& s) {
  const Vec3 h = hamiltonian_vector(b_eff, s);
  Matrix2c H;
  H << Complex(h.z(), 0.0), Complex(h.x(), -h.y()), Complex(h.x(), h.y()), Complex(-h.z(), 0.0);
  return H;
}

Matrix2c hamiltonian(double t, const Scenario& s) {
  return hamiltonian_from_field(effective_field(t, s).b_eff, s);
}

SpinState step(const SpinState& state, double t, double dt, const Scenario& s) {
  if (!(dt > 0.0)) throw Error(ErrorCode::step_size, "dt must be > 0");
  const Vec3 h = hamiltonian_vector(effective_field(t + 0.5 * dt, s).b_eff, s);
  if (dt * h.norm() >= std::numbers::pi) {
    throw Error(ErrorCode::step_size, "dt |H| >= pi: step rotates past the aliasing limit");
  }
  return rotate(state, h, dt);
}

double step_length(const Scenario& s, int steps_per_period) {
  return 2.0 * std::numbers::pi / (s.wave.omega_L * steps_per_period);
}

void for_each_step(const SpinState& state0, double t_end, int steps_per_period, const Scenario& s,
                   const std::function<void(double, const SpinState&)>& observer) {
  if (steps_per_period < kMinStepsPerPeriod) {
    throw Error(ErrorCode::step_size, "steps_per_period must be >= " +
                                          std::to_string(kMinStepsPerPeriod));
  }
  if (!(std::isfinite(t_end) && t_end >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, "t_end must be finite and >= 0");
  }

  const double dt = step_length(s, steps_per_period);
  // Whole steps, treating a remainder below 1e-9 dt as rounding noise.
  const double ratio = t_end / dt;
  long long full = static_cast<long long>(std::floor(ratio));
  if (ratio - static_cast<double>(full) > 1.0 - 1e-9) ++full;
  const double tail = t_end - static_cast<double>(full) * dt;
  const bool has_tail = tail > 1e-9 * dt;

  SpinState psi = state0;
  observer(0.0, psi);
  for (long long k = 0; k < full; ++k) {
    psi = step(psi, static_cast<double>(k) * dt, dt, s);
    const bool last = k + 1 == full && !has_tail;
    observer(last ? t_end : static_cast<double>(k + 1) * dt, psi);
  }
  if (has_tail) {
    psi = step(psi, static_cast<double>(full) * dt, tail, s);
    observer(t_end, psi);
  }
}

std::vector<SpinSample> propagate(const SpinState& state0, double t_end, int steps_per_period,
                                  const Scenario& s, int stride) {
  if (stride < 1) throw Error(ErrorCode::invalid_argument, "stride must be >= 1");
  std::vector<SpinSample> series;
  long long index = 0;
  SpinSample pending;
  for_each_step(state0, t_end, steps_per_period, s, [&](double t, const SpinState& psi) {
    pending = {t, psi, psi.flip_probability()};
    if (index++ % stride == 0) series.push_back(pending);
  });
  if (series.back().t != pending.t) series.push_back(pending);
  return series;
}

RabiSolution rabi_solution(const Scenario& s) {
  if (!s.derived.analytic_available()) return {};
  return {*s.derived.omega_S, *s.derived.amplitude, true};
}

double rabi_analytic(const Scenario& s, double t) {
  const RabiSolution sol = rabi_solution(s);
  if (!sol.valid) {
    throw Error(ErrorCode::regime,
                "analytic Rabi solution needs circular polarization in the average rest frame");
  }
  return sol.probability(t);
}

RotatingFrameResidual rotating_frame_check(std::span<const SpinSample> series, const Scenario& s) {
  if (!s.derived.analytic_available()) {
    throw Error(ErrorCode::regime, "rotating-frame check needs the circular regime");
  }
  if (series.empty()) return {};
  const double omega = s.wave.omega_L;

  // U(t) = exp(-i omega t sigma_z / 2) carries the field back to its t = 0
  // orientation; in that frame H_rot = H(0) - (omega/2) sigma_z.
  Vec3 h_rot = hamiltonian_vector(effective_field(0.0, s).b_eff, s);
  h_rot.z() -= 0.5 * omega;

  auto to_rotating = [omega](const SpinSample& x) {
    const Complex phase = std::exp(kI * (0.5 * omega * x.t));
    return SpinState{phase * x.state.up, std::conj(phase) * x.state.down};
  };

  RotatingFrameResidual out;
  const SpinState first = to_rotating(series.front());
  SpinState prev = first;
  for (std::size_t k = 1; k < series.size(); ++k) {
    const SpinState cur = to_rotating(series[k]);
    const double interval = series[k].t - series[k - 1].t;
    out.residual = std::max(out.residual, distance(rotate(prev, h_rot, interval), cur));
    const double elapsed = series[k].t - series.front().t;
    out.global_deviation = std::max(out.global_deviation, distance(rotate(first, h_rot, elapsed), cur));
    prev = cur;
  }
  return out;
}

}  // namespace spinflip
