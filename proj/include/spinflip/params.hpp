#pragma once

#include <optional>

namespace spinflip {

/// Monochromatic plane wave travelling along +z. Natural units throughout
/// (c = m = |e| = hbar = 1), so the gauge amplitude equals `eta`.
struct WaveConfig {
  double omega_L = 1.0;
  /// Squared polarization parameter. Stored squared so circular
  /// polarization (exactly 1/2) is representable without rounding.
  double epsilon_sq = 0.5;
  double eta = 0.0;

  static WaveConfig from_epsilon(double omega_L, double epsilon, double eta);

  double epsilon() const;
  double epsilon_perp() const;  // sqrt(1 - epsilon^2)
  bool circular() const { return epsilon_sq == 0.5; }
  double amplitude() const { return eta; }

  void validate() const;
};

struct ParticleConfig {
  double g = 2.0;
  int charge_sign = +1;

  void validate() const;
};

enum class FrameMode { explicit_gamma, average_rest_frame };

struct FrameConfig {
  FrameMode mode = FrameMode::average_rest_frame;
  double gamma_z = 1.0;  // 1 - v_z(0); used only in explicit mode

  static FrameConfig average_rest_frame() { return {}; }
  static FrameConfig explicit_frame(double gamma_z) {
    return {FrameMode::explicit_gamma, gamma_z};
  }
};

struct DerivedParams {
  double gamma_z = 1.0;
  double kappa_sq = 0.0;
  double eta_star_sq = 0.0;
  double theta = 0.0;
  double mu_sq = 0.0;
  double omega_L_prime = 1.0;
  /// Present only for circular polarization in the average rest frame.
  std::optional<double> omega_S;
  std::optional<double> amplitude;
  bool resonant = false;

  bool analytic_available() const { return omega_S.has_value(); }
};

/// Bundles everything the orbit, field and spin code needs.
struct Scenario {
  WaveConfig wave;
  ParticleConfig particle;
  DerivedParams derived;
};

DerivedParams derive_params(const WaveConfig& wave, const ParticleConfig& particle,
                            const FrameConfig& frame);

Scenario make_scenario(const WaveConfig& wave, const ParticleConfig& particle,
                       const FrameConfig& frame);

/// Solves gamma_z = 2 K(mu^2(gamma_z)) / pi, the condition <v_z> = 0 over one
/// orbit period, with mu^2 = eta^2 (1 - 2 eps^2) / gamma_z^2.
double solve_average_rest_frame(const WaveConfig& wave);

/// Residual gamma_z - 2 K(mu^2(gamma_z)) / pi of the frame condition.
double frame_residual(const WaveConfig& wave, double gamma_z);

double kappa_sq(double g);
double eta_star_sq(double g);
double flip_amplitude(double eta, double g);
double rabi_frequency(double omega_L, double eta, double g);

}  // namespace spinflip
