#pragma once

// Classical post-processing: recover d from one frequency pair (j, k)
// given only (m, ell, r).
//
// With L = 2^(m+ell) and z = (r j - {r j}_L) / L, a B-good pair satisfies
//
//   d z + round(r k / L) = t  (mod r)
//
// for a small unknown t with |t| <= round((B + 1/2) / 2^ell). For each such
// t the congruence is solved modulo r / tau, where tau is the least divisor
// of r making z invertible, and the tau lifts d0 + i r / tau are tried.

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dlsim/errors.hpp"
#include "dlsim/kernel.hpp"
#include "dlsim/numtheory.hpp"
#include "dlsim/random.hpp"

namespace dlsim {

/// z = 0 makes the congruence useless; the quantum part must be re-run.
class NoInverseError : public Error {
 public:
  using Error::Error;
};

class TauTooLargeError : public Error {
 public:
  using Error::Error;
};

struct SolverOptions {
  /// Largest tau for which the lifts d0 + i r / tau are enumerated.
  Integer tau_limit = pow2(20);
};

struct CandidateSet {
  Integer z;
  Integer tau;
  Integer rounded_rk;    // round(r k / L)
  Integer search_bound;  // largest |t| searched
  std::vector<Integer> candidates;
};

/// Predicate accepting the true logarithm. Must be pure.
using DlogVerifier = std::function<bool(const Integer& candidate)>;

/// Accepts exactly `d`; for simulations where the logarithm is known.
DlogVerifier equality_verifier(Integer d);

/// Accepts c when g^c = x (mod p), for a subgroup of order r of Z_p^*.
DlogVerifier group_verifier(Integer g, Integer x, Integer p);

/// round((B + 1/2) / 2^ell).
Integer search_bound(const Integer& bound, unsigned ell);

/// Requires j in [0, L). The result lies in [0, r]; z = r can occur for
/// ell >= 1 and is congruent to 0.
Integer compute_z(const PublicInstance& pub, const Integer& j);

/// Candidates ordered by |t| ascending, +t before -t, then lift index.
/// Throws NoInverseError when z = 0 and TauTooLargeError when tau exceeds
/// options.tau_limit.
CandidateSet enumerate_candidates(const PublicInstance& pub, const FrequencyPair& pair, const Integer& bound,
                                  const SolverOptions& options = {});

enum class FailureReason { z_zero, exhausted, tau_too_large };

std::string to_string(FailureReason reason);

struct SolveFailure {
  FailureReason reason;
  std::size_t candidates_tried = 0;
};

struct SolveSuccess {
  Integer d;
  std::size_t candidates_tried = 0;  // verifier calls including the accepted one
};

using SolveResult = std::variant<SolveSuccess, SolveFailure>;

SolveResult solve(const PublicInstance& pub, const FrequencyPair& pair, const Integer& bound,
                  const DlogVerifier& verifier, const SolverOptions& options = {});

struct Randomized {
  Integer d;
  Integer offset;
};

/// d = (d' + t) mod r for t uniform on [0, r).
Randomized randomize_instance(const Integer& d_prime, const Integer& r, Rng& rng);
Integer derandomize(const Integer& d, const Integer& offset, const Integer& r);

}  // namespace dlsim
