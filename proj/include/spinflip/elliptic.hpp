#pragma once

// Jacobi elliptic functions sn, cn, dn, am and the complete integral K over
// the whole real line of the parameter m = mu^2 (parameter, not modulus).

namespace spinflip::elliptic {

enum class ModulusClass { zero, standard, one, negative, greater_than_one };

/// Squared modulus m = mu^2.
class ModulusSq {
 public:
  constexpr explicit ModulusSq(double m) : m_(m) {}
  constexpr double value() const { return m_; }
  ModulusClass classify() const;

 private:
  double m_;
};

struct JacobiTriple {
  double sn;
  double cn;
  double dn;
  double am;
};

enum class Reduction {
  identity,    // 0 <= m <= 1, evaluated directly
  negative,    // m < 0:  m -> -m/(1-m), u -> u sqrt(1-m)
  reciprocal,  // m > 1:  m -> 1/m,      u -> u sqrt(m), cn and dn exchange
};

/// How to map an evaluation at (u, m) onto the standard range.
struct ReductionPlan {
  Reduction kind = Reduction::identity;
  double m_reduced = 0.0;
  double arg_scale = 1.0;  // u_reduced = arg_scale * u
  double sn_scale = 1.0;   // sn = sn_scale * (reduced sn-like quantity)
};

/// Complete elliptic integral of the first kind, AGM. Requires m < 1.
double complete_K(ModulusSq m);

ReductionPlan reduce_modulus(ModulusSq m);

/// Evaluates the reduced functions at u_reduced and maps them back.
JacobiTriple apply_plan(const ReductionPlan& plan, double u);

/// sn, cn, dn and the unwound amplitude at (u, m) for any finite m.
/// For 0 <= m < 1 the amplitude is monotone with am(u + 2K) = am(u) + pi.
JacobiTriple jacobi_eval(double u, ModulusSq m);

/// Smallest positive real period shared by sn, cn and dn.
/// Infinite for m == 1.
double real_period(ModulusSq m);

}  // namespace spinflip::elliptic
