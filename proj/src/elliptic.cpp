#include "spinflip/elliptic.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "spinflip/error.hpp"

namespace spinflip::elliptic {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// K(m) for 0 <= m < 1 via the arithmetic-geometric mean of 1 and sqrt(1-m).
double agm_K(double m) {
  double a = 1.0;
  double b = std::sqrt(1.0 - m);
  while (std::abs(a - b) > 2.0 * kEps * a) {
    const double mean = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = mean;
  }
  return kPi / (a + b);
}

// Amplitude am(u|m) for |u| <= K(m), 0 < m < 1, by descending Landen
// transformation: run the AGM forward, then recover the phase backwards.
double landen_amplitude(double u, double m) {
  constexpr int kMaxLevels = 24;
  std::array<double, kMaxLevels + 1> ratio{};  // c_n / a_n
  double a = 1.0;
  double b = std::sqrt(1.0 - m);
  double c = std::sqrt(m);
  int levels = 0;
  while (c > kEps * a && levels < kMaxLevels) {
    const double a_next = 0.5 * (a + b);
    // c_{n+1} = (a_n - b_n)/2 written without the cancellation.
    c = c * c / (4.0 * a_next);
    b = std::sqrt(a * b);
    a = a_next;
    ++levels;
    ratio[levels] = c / a;
  }
  double phi = std::ldexp(a * u, levels);
  for (int n = levels; n > 0; --n) {
    phi = 0.5 * (phi + std::asin(ratio[n] * std::sin(phi)));
  }
  return phi;
}

// 0 <= m <= 1 with an unwound amplitude.
JacobiTriple eval_standard(double u, double m) {
  if (m == 0.0) {
    return {std::sin(u), std::cos(u), 1.0, u};
  }
  if (m == 1.0) {
    const double sech = 1.0 / std::cosh(u);
    return {std::tanh(u), sech, sech, std::atan(std::sinh(u))};
  }
  // Peel off whole half-periods: sn, cn change sign and am gains pi per 2K.
  const double two_K = 2.0 * agm_K(m);
  const double half_periods = std::nearbyint(u / two_K);
  const double r = std::fma(-half_periods, two_K, u);
  const double phi = landen_amplitude(r, m);
  const double sign = std::fmod(half_periods, 2.0) == 0.0 ? 1.0 : -1.0;
  const double s = std::sin(phi);
  const double c = std::cos(phi);
  // dn^2 = (1-m) + m cn^2 has no cancellation near sn = 1.
  const double dn = std::sqrt((1.0 - m) + m * c * c);
  return {sign * s, sign * c, dn, half_periods * kPi + phi};
}

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw Error(ErrorCode::invalid_argument, std::string(what) + " must be finite");
  }
}

}  // namespace

ModulusClass ModulusSq::classify() const {
  if (m_ == 0.0) return ModulusClass::zero;
  if (m_ == 1.0) return ModulusClass::one;
  if (m_ < 0.0) return ModulusClass::negative;
  if (m_ > 1.0) return ModulusClass::greater_than_one;
  return ModulusClass::standard;
}

double complete_K(ModulusSq modulus) {
  const double m = modulus.value();
  require_finite(m, "m");
  if (m == 1.0) {
    throw Error(ErrorCode::domain, "K(m) diverges at m = 1");
  }
  if (m > 1.0) {
    throw Error(ErrorCode::domain, "K(m) is not real for m > 1 (m = " + std::to_string(m) + ")");
  }
  if (m == 0.0) return kPi / 2.0;
  // The AGM of (1, sqrt(1 - m)) covers m < 0 as well; the imaginary-modulus
  // map m -> -m/(1-m) would round to 1 for very negative m.
  return agm_K(m);
}

ReductionPlan reduce_modulus(ModulusSq modulus) {
  const double m = modulus.value();
  switch (modulus.classify()) {
    case ModulusClass::negative: {
      const double scale = std::sqrt(1.0 - m);
      return {Reduction::negative, -m / (1.0 - m), scale, 1.0 / scale};
    }
    case ModulusClass::greater_than_one: {
      const double scale = std::sqrt(m);
      return {Reduction::reciprocal, 1.0 / m, scale, 1.0 / scale};
    }
    default:
      return {Reduction::identity, m, 1.0, 1.0};
  }
}

JacobiTriple apply_plan(const ReductionPlan& plan, double u) {
  const JacobiTriple t = eval_standard(plan.arg_scale * u, plan.m_reduced);
  switch (plan.kind) {
    case Reduction::identity:
      return t;
    case Reduction::negative: {
      // sn = sd / sqrt(1-m), cn = cd, dn = nd in the reduced parameter.
      const double sn = plan.sn_scale * t.sn / t.dn;
      const double cn = t.cn / t.dn;
      const double dn = 1.0 / t.dn;
      // Same quadrant as the reduced amplitude, so unwind relative to it.
      const double am = t.am + std::remainder(std::atan2(sn, cn) - t.am, 2.0 * kPi);
      return {sn, cn, dn, am};
    }
    case Reduction::reciprocal: {
      const double sn = plan.sn_scale * t.sn;
      const double cn = t.dn;
      const double dn = t.cn;
      // cn > 0 throughout, so am stays in (-pi/2, pi/2) and oscillates.
      return {sn, cn, dn, std::atan2(sn, cn)};
    }
  }
  return t;
}

JacobiTriple jacobi_eval(double u, ModulusSq m) {
  require_finite(u, "u");
  require_finite(m.value(), "m");
  return apply_plan(reduce_modulus(m), u);
}

double real_period(ModulusSq modulus) {
  const double m = modulus.value();
  switch (modulus.classify()) {
    case ModulusClass::zero:
      return 2.0 * kPi;
    case ModulusClass::one:
      return std::numeric_limits<double>::infinity();
    case ModulusClass::greater_than_one:
      return 4.0 * agm_K(1.0 / m) / std::sqrt(m);
    default:
      return 4.0 * complete_K(modulus);
  }
}

}  // namespace spinflip::elliptic
