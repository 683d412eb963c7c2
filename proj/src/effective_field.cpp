#include "spinflip/effective_field.hpp"

#include <cmath>

#include "spinflip/elliptic.hpp"
#include "spinflip/error.hpp"

namespace spinflip {

FieldSample effective_field(double t, const Scenario& s) {
  const Vec3 v = velocity(t, s);
  const Vec3 a = acceleration(t, s);
  const LabFields lab = fields_at_particle(t, s);
  const double q = static_cast<double>(s.particle.charge_sign);

  FieldSample out;
  out.t = t;
  out.b_rest = lab.B - v.cross(lab.E);
  out.b_thomas = v.cross(a) / (q * s.particle.g);
  out.b_eff = out.b_rest + out.b_thomas;
  return out;
}

Vec3 RotatingConeField::direction(double t) const {
  const double st = std::sin(theta);
  return {st * std::cos(omega * t), st * std::sin(omega * t), std::cos(theta) * axis.z()};
}

RotatingConeField circular_closed_form(const Scenario& s) {
  if (!s.wave.circular() || !s.derived.analytic_available()) {
    throw Error(ErrorCode::regime,
                "rotating-cone form needs circular polarization in the average rest frame");
  }
  if (!(s.wave.eta > 0.0)) {
    throw Error(ErrorCode::regime, "rotating-cone form needs eta > 0");
  }
  const double g = s.particle.g;
  const double eta = s.wave.eta;
  const double q = static_cast<double>(s.particle.charge_sign);

  RotatingConeField cone;
  cone.magnitude = s.wave.amplitude() * s.wave.omega_L * std::abs(1.0 - g) / (2.0 * g) *
                   std::sqrt(s.derived.kappa_sq + eta * eta);
  cone.magnitude = std::abs(cone.magnitude);
  cone.theta = s.derived.theta;
  cone.omega = s.wave.omega_L;
  cone.axis = Vec3(0.0, 0.0, q * (1.0 - g) * g >= 0.0 ? 1.0 : -1.0);
  return cone;
}

Vec3 componentwise_closed_form(double t, const Scenario& s) {
  if (s.derived.mu_sq == 1.0) {
    throw Error(ErrorCode::degenerate_orbit, "mu^2 = 1: the orbit is not periodic");
  }
  const auto j = elliptic::jacobi_eval(s.derived.omega_L_prime * t,
                                       elliptic::ModulusSq(s.derived.mu_sq));
  const double g = s.particle.g;
  const double gamma = s.derived.gamma_z;
  const double e = s.wave.epsilon();
  const double e_perp = s.wave.epsilon_perp();
  const double scale = s.wave.amplitude() * s.derived.omega_L_prime / g;
  return scale * Vec3(e_perp * ((g + 1.0) * j.dn - gamma) * j.cn,
                      e * ((g + 1.0) * j.dn - gamma * (1.0 - s.derived.mu_sq)) * j.sn,
                      e * e_perp * (j.dn - g / gamma));
}

}  // namespace spinflip
