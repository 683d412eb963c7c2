#include "spinflip/trajectory.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "spinflip/elliptic.hpp"
#include "spinflip/error.hpp"

namespace spinflip {

namespace {

using elliptic::JacobiTriple;
using elliptic::ModulusSq;

// Tolerance handed to the adaptive Gauss-Kronrod rule, relative to eta times
// the interval length. The integrands are analytic over at most one orbit
// period, so a shallow depth cap costs no accuracy; a deep one lets rounding
// noise in the error estimate drive needless subdivision.
constexpr double kQuadTolerance = 1e-12;
constexpr unsigned kQuadMaxDepth = 6;

void require_orbit(const Scenario& s) {
  if (s.derived.mu_sq == 1.0) {
    throw Error(ErrorCode::degenerate_orbit, "mu^2 = 1: the orbit is not periodic");
  }
}

JacobiTriple jacobi_at(double t, const Scenario& s) {
  require_orbit(s);
  return elliptic::jacobi_eval(s.derived.omega_L_prime * t, ModulusSq(s.derived.mu_sq));
}

double charge(const Scenario& s) { return static_cast<double>(s.particle.charge_sign); }

Vec3 velocity_from(const JacobiTriple& j, const Scenario& s) {
  const double q = charge(s);
  const double eta = s.wave.eta;
  return {-q * eta * s.wave.epsilon() * j.cn, -q * eta * s.wave.epsilon_perp() * j.sn,
          1.0 - s.derived.gamma_z * j.dn};
}

// int_a^b f for |f| <= bound. The rule's tolerance is relative to the running
// estimate, which never settles for an integral that vanishes, so the
// integrand is lifted to f + bound >= 0 first. The interval is mapped onto
// [0, 1] because the rule's error estimate is not scaled with the interval
// length and would otherwise recurse to full depth on very short intervals.
template <class F>
double integrate(F&& f, double a, double b, double bound) {
  if (a == b) return 0.0;
  const double width = b - a;
  auto lifted = [&](double x) { return f(a + x * width) + bound; };
  return width * (boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
                      lifted, 0.0, 1.0, kQuadMaxDepth, kQuadTolerance) -
                  bound);
}

// int_0^t of a transverse velocity component. sn and cn have zero mean over
// a full period for every m, so only the remainder after whole periods counts.
template <class F>
double integrate_periodic(F&& f, double t, double period, double bound) {
  if (!std::isfinite(period)) return integrate(f, 0.0, t, bound);
  const double rest = t - std::floor(t / period) * period;
  return integrate(f, 0.0, rest, bound);
}

}  // namespace

Vec3 velocity(double t, const Scenario& s) { return velocity_from(jacobi_at(t, s), s); }

Vec3 acceleration(double t, const Scenario& s) {
  const JacobiTriple j = jacobi_at(t, s);
  const double q = charge(s);
  const double eta = s.wave.eta;
  const double w = s.derived.omega_L_prime;
  // sn' = cn dn, cn' = -sn dn, dn' = -m sn cn
  return {w * q * eta * s.wave.epsilon() * j.sn * j.dn,
          -w * q * eta * s.wave.epsilon_perp() * j.cn * j.dn,
          w * s.derived.gamma_z * s.derived.mu_sq * j.sn * j.cn};
}

double phase(double t, const Scenario& s) { return jacobi_at(t, s).am; }

double orbit_period(const Scenario& s) {
  require_orbit(s);
  return elliptic::real_period(ModulusSq(s.derived.mu_sq)) / s.derived.omega_L_prime;
}

Vec3 position(double t, const Scenario& s) {
  const JacobiTriple j = jacobi_at(t, s);
  const double z = t - j.am / s.wave.omega_L;
  const double period = orbit_period(s);
  const double eps = s.wave.epsilon();
  const double eps_perp = s.wave.epsilon_perp();
  double x = 0.0;
  double y = 0.0;
  const double bound = s.wave.eta;
  if (eps != 0.0) {
    x = integrate_periodic([&](double tau) { return velocity(tau, s).x(); }, t, period, bound);
  }
  if (eps_perp != 0.0) {
    y = integrate_periodic([&](double tau) { return velocity(tau, s).y(); }, t, period, bound);
  }
  return {x, y, z};
}

Vec3 gauge_potential(double wave_phase, const Scenario& s) {
  const double a = s.wave.amplitude();
  return {a * s.wave.epsilon() * std::cos(wave_phase),
          a * s.wave.epsilon_perp() * std::sin(wave_phase), 0.0};
}

LabFields fields_at_particle(double t, const Scenario& s) {
  const double phi = phase(t, s);
  const double aw = s.wave.amplitude() * s.wave.omega_L;
  LabFields f;
  f.E = Vec3(aw * s.wave.epsilon() * std::sin(phi), -aw * s.wave.epsilon_perp() * std::cos(phi), 0.0);
  // Plane wave along +z: B = z_hat x E.
  f.B = Vec3(-f.E.y(), f.E.x(), 0.0);
  return f;
}

TrajectorySample sample_trajectory(double t, const Scenario& s) {
  TrajectorySample out;
  out.t = t;
  out.velocity = velocity(t, s);
  out.position = position(t, s);
  out.acceleration = acceleration(t, s);
  out.phase = phase(t, s);
  return out;
}

Vec3 transverse_position_closed_form(double t, const Scenario& s) {
  const double m = s.derived.mu_sq;
  if (!(m >= 0.0 && m < 1.0)) {
    throw Error(ErrorCode::regime, "closed-form transverse position needs 0 <= mu^2 < 1");
  }
  const JacobiTriple j = jacobi_at(t, s);
  const double w = s.derived.omega_L_prime;
  double int_cn = 0.0;
  double int_sn = 0.0;
  if (m == 0.0) {
    int_cn = j.sn / w;
    int_sn = (1.0 - j.cn) / w;
  } else {
    const double mu = std::sqrt(m);
    // dn > mu |cn| for mu^2 < 1, so neither antiderivative crosses a branch cut.
    int_cn = std::atan2(mu * j.sn, j.dn) / (mu * w);
    int_sn = std::log((j.dn - mu * j.cn) / (1.0 - mu)) / (mu * w);
  }
  const double q = charge(s);
  const double eta = s.wave.eta;
  return {-q * eta * s.wave.epsilon() * int_cn, -q * eta * s.wave.epsilon_perp() * int_sn,
          t - j.am / s.wave.omega_L};
}

}  // namespace spinflip
