#pragma once

#include "spinflip/params.hpp"
#include "spinflip/trajectory.hpp"

namespace spinflip {

/// Spatially homogeneous field that drives the spin along the orbit.
struct FieldSample {
  double t = 0.0;
  Vec3 b_rest = Vec3::Zero();    // B - v x E, the field in the instantaneous rest frame
  Vec3 b_thomas = Vec3::Zero();  // (1 / (q g)) v x a, leading Thomas term
  Vec3 b_eff = Vec3::Zero();     // b_rest + b_thomas
};

FieldSample effective_field(double t, const Scenario& s);

/// Circular polarization in the average rest frame: the effective field has
/// constant magnitude and precesses about the z axis at omega_L,
///   b(t) = magnitude * (sin(theta) cos(omega t), sin(theta) sin(omega t), cos(theta) axis_z).
///
/// `axis` is +z or -z: the longitudinal component has the sign of q (1 - g),
/// so for an electron-like g > 1 the cone opens around -z. theta is taken in
/// [0, pi/2] with tan(theta) = kappa / eta.
struct RotatingConeField {
  double magnitude = 0.0;
  double theta = 0.0;
  double omega = 1.0;
  Vec3 axis = Vec3::UnitZ();

  Vec3 direction(double t) const;
  Vec3 at(double t) const { return magnitude * direction(t); }
};

RotatingConeField circular_closed_form(const Scenario& s);

/// Componentwise closed form of B' in terms of sn, cn, dn:
///   (a w'/g) ( e_perp [(g+1) dn - gamma] cn,
///              e [(g+1) dn - gamma (1 - m)] sn,
///              e e_perp [dn - g/gamma] ).
/// Kept as a cross-check only. Against effective_field (charge +1) the x and
/// y components agree identically; the z component is smaller by exactly a
/// factor eta, so it disagrees with the rotating-cone magnitude whenever
/// eta != 1. Spin propagation never uses it.
Vec3 componentwise_closed_form(double t, const Scenario& s);

}  // namespace spinflip
