#include "dlsim/kernel.hpp"

#include <algorithm>
#include <string>

#include "dlsim/errors.hpp"

namespace dlsim {
namespace {

// Below this value of |L phi| (or |L theta_r / r|) the removable-singularity
// limit is used instead of the quotient.
const long kLimitExponent = -32;

bool below_limit_threshold(const Real& x) {
  return abs(x) < ldexp(Real(1), kLimitExponent);
}

void require_pair_in_range(const ProblemInstance& inst, const FrequencyPair& pair) {
  const Integer L = inst.modulus();
  if (sgn(pair.j) < 0 || pair.j >= L || sgn(pair.k) < 0 || pair.k >= L) {
    throw InvalidInstance("frequency pair outside [0, 2^(m+ell))");
  }
}

// sin^2(pi * num / den) with num reduced modulo den first (period pi).
Real sin_squared_pi_fraction(const Integer& num, const Integer& den) {
  Integer reduced = reduce_mod(num, den);
  return sin_squared(pi() * Real(ratio(reduced, den)));
}

}  // namespace

void PublicInstance::validate() const {
  if (m < 2) throw InvalidInstance("m must be at least 2");
  if (r < pow2(m - 1) || r >= pow2(m)) {
    throw InvalidInstance("r = " + r.get_str() + " is not an m-bit integer for m = " + std::to_string(m));
  }
}

void ProblemInstance::validate() const {
  public_part().validate();
  if (sgn(d) < 0 || d >= r) throw InvalidInstance("d must lie in [0, r)");
}

std::ostream& operator<<(std::ostream& os, const FrequencyPair& p) {
  return os << "(j=" << p.j << ", k=" << p.k << ")";
}

std::ostream& operator<<(std::ostream& os, const ArgumentPair& a) {
  return os << "(alpha_d=" << a.alpha_d << ", alpha_r=" << a.alpha_r << ")";
}

bool is_admissible(const Integer& alpha_r, const Integer& r) {
  return mpz_divisible_2exp_p(alpha_r.get_mpz_t(), kappa(r)) != 0;
}

ArgumentPair arguments_of(const ProblemInstance& inst, const FrequencyPair& pair) {
  require_pair_in_range(inst, pair);
  const Integer L = inst.modulus();
  return {reduce_signed(inst.d * pair.j + pair.k, L), reduce_signed(inst.r * pair.j, L)};
}

AnglePair angles_of(const ProblemInstance& inst, const ArgumentPair& args) {
  const int bits = std::max(working_precision(), static_cast<int>(inst.control_bits()) + 96);
  PrecisionGuard guard(bits);
  const long shift = -static_cast<long>(inst.control_bits());
  Real two_pi = ldexp(pi(), 1);
  return {ldexp(two_pi * Real(args.alpha_d), shift), ldexp(two_pi * Real(args.alpha_r), shift)};
}

Real phi(const ProblemInstance& inst, const ArgumentPair& args) {
  Integer num = args.alpha_d * inst.r - args.alpha_r * inst.d;
  return ldexp(pi(), 1) * Real(ratio(num, Integer(inst.r * inst.modulus())));
}

GoodnessDecomposition decompose(const ProblemInstance& inst, const ArgumentPair& args) {
  Rational center = ratio(Integer(args.alpha_r * inst.d), inst.r);
  Integer rounded = round_nearest(center);
  GoodnessDecomposition out;
  out.offset = reduce_signed(args.alpha_d - rounded, inst.modulus());
  out.residual = Rational(rounded) - center;
  return out;
}

bool is_b_good(const ProblemInstance& inst, const FrequencyPair& pair, const Integer& bound) {
  GoodnessDecomposition dec = decompose(inst, arguments_of(inst, pair));
  return abs(dec.offset) <= bound;
}

Real heuristic_density(const ProblemInstance& inst, const ArgumentPair& args) {
  const Integer L = inst.modulus();
  const long n = static_cast<long>(inst.control_bits());

  // 2(1 - cos(L theta_r / r)) / theta_r^2 = 4 sin^2(pi alpha_r / r) / theta_r^2
  Real radial;
  if (sgn(args.alpha_r) == 0) {
    radial = sqr(Real(ratio(L, inst.r)));
  } else {
    Real theta_r = ldexp(ldexp(pi(), 1) * Real(args.alpha_r), -n);
    Real scaled = theta_r * Real(ratio(L, inst.r));
    if (below_limit_threshold(scaled)) {
      radial = sqr(Real(ratio(L, inst.r)));
    } else {
      radial = ldexp(sin_squared_pi_fraction(args.alpha_r, inst.r), 2) / sqr(theta_r);
    }
  }

  // (cos(L phi) - 1) / (cos(phi) - 1) = sin^2(L phi / 2) / sin^2(phi / 2)
  // with L phi = 2 pi num / r.
  Integer num = args.alpha_d * inst.r - args.alpha_r * inst.d;
  Real interference;
  Real l_phi = ldexp(pi(), 1) * Real(ratio(num, inst.r));
  if (below_limit_threshold(l_phi)) {
    interference = sqr(Real(L));
  } else {
    interference = sin_squared_pi_fraction(num, inst.r) /
                   sin_squared_pi_fraction(num, Integer(inst.r * L));
  }

  return Real(inst.r) * ldexp(radial * interference, -4 * n);
}

Real heuristic_density(const ProblemInstance& inst, const AnglePair& angles) {
  const int bits = std::max({working_precision(), angles.theta_d.precision(), angles.theta_r.precision()});
  PrecisionGuard guard(bits);
  const long n = static_cast<long>(inst.control_bits());
  const Real L = ldexp(Real(1), n);
  const Real r(inst.r);

  Real radial;
  Real scaled = angles.theta_r * L / r;
  if (below_limit_threshold(scaled)) {
    radial = sqr(L / r);
  } else {
    radial = ldexp(sin_squared(ldexp(scaled, -1)), 2) / sqr(angles.theta_r);
  }

  Real phi_value = angles.theta_d - angles.theta_r * Real(inst.d) / r;
  Real l_phi = ldexp(phi_value, n);
  Real interference;
  if (below_limit_threshold(l_phi)) {
    interference = sqr(L);
  } else {
    interference = sin_squared(ldexp(l_phi, -1)) / sin_squared(ldexp(phi_value, -1));
  }
  return r * ldexp(radial * interference, -4 * n);
}

}  // namespace dlsim
