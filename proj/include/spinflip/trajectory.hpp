#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "spinflip/params.hpp"

namespace spinflip {

using Vec3 = Eigen::Vector3d;

struct TrajectorySample {
  double t = 0.0;
  Vec3 velocity = Vec3::Zero();
  Vec3 position = Vec3::Zero();
  Vec3 acceleration = Vec3::Zero();
  double phase = 0.0;  // omega_L * xi at the particle, unwound
};

struct LabFields {
  Vec3 E = Vec3::Zero();
  Vec3 B = Vec3::Zero();
};

// Classical orbit of the charge in the plane wave, started at the origin.
// All functions reject mu^2 == 1 with ErrorCode::degenerate_orbit.

Vec3 velocity(double t, const Scenario& s);
Vec3 position(double t, const Scenario& s);
Vec3 acceleration(double t, const Scenario& s);
double phase(double t, const Scenario& s);

/// Orbit period 4K(mu^2)/omega_L' (2 pi/omega_L' when mu^2 = 0).
double orbit_period(const Scenario& s);

/// Vector potential of the wave at phase omega_L * xi.
Vec3 gauge_potential(double wave_phase, const Scenario& s);

/// E = -dA/dt and B = curl A at the particle's position at time t.
LabFields fields_at_particle(double t, const Scenario& s);

TrajectorySample sample_trajectory(double t, const Scenario& s);

/// Transverse displacement from the antiderivatives
///   int cn = atan(mu sn / dn) / mu,  int sn = log((dn - mu cn)/(1 - mu)) / mu.
/// Valid for 0 <= mu^2 < 1 only (ErrorCode::regime otherwise).
Vec3 transverse_position_closed_form(double t, const Scenario& s);

}  // namespace spinflip
