#include "dlsim/solver.hpp"

#include <set>

namespace dlsim {

DlogVerifier equality_verifier(Integer d) {
  return [d = std::move(d)](const Integer& candidate) { return candidate == d; };
}

DlogVerifier group_verifier(Integer g, Integer x, Integer p) {
  return [g = std::move(g), x = std::move(x), p = std::move(p)](const Integer& candidate) {
    return mod_pow(g, candidate, p) == x;
  };
}

Integer search_bound(const Integer& bound, unsigned ell) {
  if (sgn(bound) < 0) throw std::invalid_argument("B must be non-negative");
  return round_nearest(ratio(Integer(2 * bound + 1), pow2(ell + 1)));
}

Integer compute_z(const PublicInstance& pub, const Integer& j) {
  const Integer L = pub.modulus();
  if (sgn(j) < 0 || j >= L) throw InvalidInstance("j outside [0, 2^(m+ell))");
  const Integer rj = pub.r * j;
  Integer z;
  Integer numerator = rj - reduce_signed(rj, L);
  mpz_divexact(z.get_mpz_t(), numerator.get_mpz_t(), L.get_mpz_t());
  return z;
}

CandidateSet enumerate_candidates(const PublicInstance& pub, const FrequencyPair& pair, const Integer& bound,
                                  const SolverOptions& options) {
  pub.validate();
  const Integer L = pub.modulus();
  if (sgn(pair.k) < 0 || pair.k >= L) throw InvalidInstance("k outside [0, 2^(m+ell))");

  CandidateSet out;
  out.z = compute_z(pub, pair.j);
  const Integer z = reduce_mod(out.z, pub.r);
  if (sgn(z) == 0) throw NoInverseError("z = 0 mod r; the quantum algorithm has to be re-run");

  out.tau = smallest_tau(z, pub.r);
  if (out.tau > options.tau_limit) {
    throw TauTooLargeError("tau = " + out.tau.get_str() + " exceeds the configured limit");
  }
  const Integer reduced_modulus = pub.r / out.tau;
  Integer inverse = 0;
  if (reduced_modulus > 1) inverse = *mod_inverse(z, reduced_modulus);

  out.rounded_rk = round_nearest(ratio(Integer(pub.r * pair.k), L));
  out.search_bound = search_bound(bound, pub.ell);

  std::set<Integer> seen;
  auto add_for = [&](const Integer& t) {
    const Integer base = reduced_modulus > 1 ? reduce_mod((t - out.rounded_rk) * inverse, reduced_modulus) : Integer(0);
    for (Integer i = 0; i < out.tau; ++i) {
      Integer candidate = base + i * reduced_modulus;
      if (seen.insert(candidate).second) out.candidates.push_back(std::move(candidate));
    }
  };
  add_for(0);
  for (Integer t = 1; t <= out.search_bound; ++t) {
    add_for(t);
    add_for(Integer(-t));
  }
  return out;
}

std::string to_string(FailureReason reason) {
  switch (reason) {
    case FailureReason::z_zero: return "z_zero";
    case FailureReason::exhausted: return "exhausted";
    case FailureReason::tau_too_large: return "tau_too_large";
  }
  return "unknown";
}

SolveResult solve(const PublicInstance& pub, const FrequencyPair& pair, const Integer& bound,
                  const DlogVerifier& verifier, const SolverOptions& options) {
  CandidateSet set;
  try {
    set = enumerate_candidates(pub, pair, bound, options);
  } catch (const NoInverseError&) {
    return SolveFailure{FailureReason::z_zero, 0};
  } catch (const TauTooLargeError&) {
    return SolveFailure{FailureReason::tau_too_large, 0};
  }
  std::size_t tried = 0;
  for (const Integer& candidate : set.candidates) {
    ++tried;
    if (verifier(candidate)) return SolveSuccess{candidate, tried};
  }
  return SolveFailure{FailureReason::exhausted, tried};
}

Randomized randomize_instance(const Integer& d_prime, const Integer& r, Rng& rng) {
  if (sgn(d_prime) < 0 || d_prime >= r) throw InvalidInstance("d' must lie in [0, r)");
  Integer offset = uniform_below(r, rng);
  return {reduce_mod(d_prime + offset, r), offset};
}

Integer derandomize(const Integer& d, const Integer& offset, const Integer& r) {
  return reduce_mod(d - offset, r);
}

}  // namespace dlsim
