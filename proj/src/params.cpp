#include "spinflip/params.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "spinflip/elliptic.hpp"
#include "spinflip/error.hpp"

namespace spinflip {

namespace {

constexpr double kFrameTolerance = 1e-12;
constexpr int kFrameMaxIterations = 200;

void require(bool ok, ErrorCode code, const std::string& message) {
  if (!ok) throw Error(code, message);
}

void require_g(double g) {
  require(std::isfinite(g), ErrorCode::invalid_argument, "g must be finite");
  require(g != 1.0, ErrorCode::degenerate_gyromagnetic,
          "g = 1: kappa and eta_* are undefined");
}

}  // namespace

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::degenerate_gyromagnetic: return "degenerate_gyromagnetic";
    case ErrorCode::frame_unreachable: return "frame_unreachable";
    case ErrorCode::domain: return "domain_error";
    case ErrorCode::degenerate_orbit: return "degenerate_orbit";
    case ErrorCode::step_size: return "step_size";
    case ErrorCode::regime: return "regime_error";
    case ErrorCode::no_resonance: return "no_resonance";
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::config: return "config_error";
  }
  return "error";
}

WaveConfig WaveConfig::from_epsilon(double omega_L, double epsilon, double eta) {
  double eps_sq = epsilon * epsilon;
  // 1/sqrt(2) squared is not exactly 1/2 in binary.
  if (std::abs(eps_sq - 0.5) <= 4.0 * std::numeric_limits<double>::epsilon()) eps_sq = 0.5;
  return {omega_L, eps_sq, eta};
}

double WaveConfig::epsilon() const { return std::sqrt(epsilon_sq); }
double WaveConfig::epsilon_perp() const { return std::sqrt(1.0 - epsilon_sq); }

void WaveConfig::validate() const {
  require(std::isfinite(omega_L) && omega_L > 0.0, ErrorCode::invalid_argument,
          "omega_L must be finite and > 0");
  require(std::isfinite(epsilon_sq) && epsilon_sq >= 0.0 && epsilon_sq <= 1.0,
          ErrorCode::invalid_argument, "epsilon out of [0,1]");
  require(std::isfinite(eta) && eta >= 0.0, ErrorCode::invalid_argument,
          "eta must be finite and >= 0");
}

void ParticleConfig::validate() const {
  require(std::isfinite(g), ErrorCode::invalid_argument, "g must be finite");
  require(charge_sign == 1 || charge_sign == -1, ErrorCode::invalid_argument,
          "charge_sign must be +1 or -1");
}

double kappa_sq(double g) {
  require_g(g);
  return 2.0 * g * g / ((1.0 - g) * (1.0 - g));
}

double eta_star_sq(double g) {
  require_g(g);
  return 4.0 / (g - 1.0);
}

double flip_amplitude(double eta, double g) {
  const double k2 = kappa_sq(g);
  const double e2 = eta * eta;
  const double coupling = k2 * e2;
  const double detuning = e2 - eta_star_sq(g);
  const double denom = coupling + detuning * detuning;
  return denom == 0.0 ? 0.0 : coupling / denom;
}

double rabi_frequency(double omega_L, double eta, double g) {
  const double k2 = kappa_sq(g);
  const double e2 = eta * eta;
  const double detuning = e2 - eta_star_sq(g);
  return omega_L * std::abs(1.0 - g) / 8.0 * std::sqrt(k2 * e2 + detuning * detuning);
}

double frame_residual(const WaveConfig& wave, double gamma_z) {
  const double m = wave.eta * wave.eta * (1.0 - 2.0 * wave.epsilon_sq) / (gamma_z * gamma_z);
  return gamma_z - 2.0 * elliptic::complete_K(elliptic::ModulusSq(m)) / std::numbers::pi;
}

// The residual f(gamma) = gamma - 2K(c/gamma^2)/pi, c = eta^2 (1 - 2 eps^2),
// is increasing with exactly one root. For c > 0 the root lies above
// max(1, sqrt(c)) where K diverges; for c < 0 it lies in (0, 1).
//
// For large |c| the root crowds against sqrt(c) (or 0) exponentially and one
// ulp of gamma moves f by more than the tolerance. The solve then ends when
// the bracket shrinks to adjacent doubles, returning the better endpoint.
double solve_average_rest_frame(const WaveConfig& wave) {
  wave.validate();
  const double c = wave.eta * wave.eta * (1.0 - 2.0 * wave.epsilon_sq);
  if (c == 0.0) return 1.0;

  constexpr double kInf = std::numeric_limits<double>::infinity();
  auto residual_at = [c](double gamma) {
    const double m = c / (gamma * gamma);
    if (m >= 1.0) return -kInf;  // at or below the singularity
    return gamma - 2.0 * elliptic::complete_K(elliptic::ModulusSq(m)) / std::numbers::pi;
  };

  double lo = 0.0;
  double hi = 0.0;
  if (c > 0.0) {
    lo = std::sqrt(c);
    hi = 2.0 * std::max(1.0, lo);
    while (residual_at(hi) <= 0.0) hi *= 2.0;
  } else {
    hi = 1.0;
    lo = 0.5;
    while (residual_at(lo) >= 0.0) {
      lo *= 0.5;
      if (lo < std::numeric_limits<double>::min()) {
        throw Error(ErrorCode::frame_unreachable, "average rest frame gamma_z underflows");
      }
    }
  }
  double f_lo = residual_at(lo);
  double f_hi = residual_at(hi);

  // Damped fixed-point iteration. Near the singularity f' exceeds 1/damping
  // and the plain iteration stops contracting, so bisect whenever a step
  // leaves the bracket or fails to halve the residual. Bisection is
  // geometric while the bracket spans orders of magnitude.
  constexpr double kDamping = 0.5;
  auto midpoint = [&] { return hi > 4.0 * lo && lo > 0.0 ? std::sqrt(lo * hi) : 0.5 * (lo + hi); };
  double gamma = midpoint();
  double previous = kInf;
  for (int it = 0; it < kFrameMaxIterations; ++it) {
    const double residual = residual_at(gamma);
    if (std::abs(residual) < kFrameTolerance * std::min(1.0, gamma)) return gamma;
    if (residual < 0.0) {
      lo = gamma;
      f_lo = residual;
    } else {
      hi = gamma;
      f_hi = residual;
    }
    if (std::nextafter(lo, kInf) >= hi) {
      const double best = std::abs(f_lo) < std::abs(f_hi) ? lo : hi;
      if (c / (best * best) >= 1.0) break;
      return best;
    }
    double next = gamma - kDamping * residual;
    if (!(next > lo && next < hi) || std::abs(residual) > 0.5 * previous) next = midpoint();
    previous = std::abs(residual);
    gamma = next;
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "average rest frame not reached after " << kFrameMaxIterations
      << " iterations; last gamma_z = " << gamma;
  throw Error(ErrorCode::frame_unreachable, msg.str());
}

DerivedParams derive_params(const WaveConfig& wave, const ParticleConfig& particle,
                            const FrameConfig& frame) {
  wave.validate();
  particle.validate();
  require_g(particle.g);

  DerivedParams d;
  if (frame.mode == FrameMode::average_rest_frame) {
    d.gamma_z = solve_average_rest_frame(wave);
  } else {
    require(std::isfinite(frame.gamma_z) && frame.gamma_z > 0.0, ErrorCode::invalid_argument,
            "gamma_z must be finite and > 0");
    d.gamma_z = frame.gamma_z;
  }

  const double eta = wave.eta;
  d.kappa_sq = kappa_sq(particle.g);
  d.eta_star_sq = eta_star_sq(particle.g);
  d.theta = std::atan2(std::sqrt(d.kappa_sq), eta);
  d.mu_sq = wave.circular() ? 0.0 : eta * eta * (1.0 - 2.0 * wave.epsilon_sq) / (d.gamma_z * d.gamma_z);
  d.omega_L_prime = d.gamma_z * wave.omega_L;
  d.resonant = particle.g > 1.0;
  if (wave.circular() && d.gamma_z == 1.0) {
    d.omega_S = rabi_frequency(wave.omega_L, eta, particle.g);
    d.amplitude = flip_amplitude(eta, particle.g);
  }
  return d;
}

Scenario make_scenario(const WaveConfig& wave, const ParticleConfig& particle,
                       const FrameConfig& frame) {
  return {wave, particle, derive_params(wave, particle, frame)};
}

}  // namespace spinflip
