#pragma once

// Probability model for one run of the padded discrete-logarithm circuit.
//
// A run on m + ell control qubits per register outputs a frequency pair
// (j, k) in [0, L)^2 with L = 2^(m+ell). The distribution is described in
// terms of the signed arguments
//
//   alpha_d = {d j + k}_L,   alpha_r = {r j}_L,
//
// and the angles theta = 2 pi alpha / L. Pairs concentrate where
// alpha_d - alpha_r d / r is small; writing
//
//   alpha_d = round(alpha_r d / r) + offset   (mod L),
//
// a pair is B-good when |offset| <= B.

#include <ostream>

#include "dlsim/numtheory.hpp"
#include "dlsim/real.hpp"

namespace dlsim {

/// Public part (m, ell, r) of an instance; all the post-processing may see.
struct PublicInstance {
  unsigned m = 0;
  unsigned ell = 0;
  Integer r;

  unsigned control_bits() const { return m + ell; }
  /// L = 2^(m+ell).
  Integer modulus() const { return pow2(m + ell); }
  /// Throws InvalidInstance unless m >= 2 and 2^(m-1) <= r < 2^m.
  void validate() const;

  friend bool operator==(const PublicInstance&, const PublicInstance&) = default;
};

struct ProblemInstance {
  unsigned m = 0;
  unsigned ell = 0;
  Integer r;
  Integer d;

  unsigned control_bits() const { return m + ell; }
  Integer modulus() const { return pow2(m + ell); }
  PublicInstance public_part() const { return {m, ell, r}; }
  /// Public invariants plus 0 <= d < r.
  void validate() const;

  friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;
};

struct FrequencyPair {
  Integer j;
  Integer k;

  friend bool operator==(const FrequencyPair&, const FrequencyPair&) = default;
};

struct ArgumentPair {
  Integer alpha_d;
  Integer alpha_r;

  friend bool operator==(const ArgumentPair&, const ArgumentPair&) = default;
};

struct AnglePair {
  Real theta_d;
  Real theta_r;
};

/// alpha_d = round(alpha_r d / r) + offset (mod L), residual = round(x) - x.
struct GoodnessDecomposition {
  Integer offset;
  Rational residual;  // in [-1/2, 1/2)
};

std::ostream& operator<<(std::ostream& os, const FrequencyPair& p);
std::ostream& operator<<(std::ostream& os, const ArgumentPair& a);

/// True when alpha_r is a multiple of 2^kappa(r).
bool is_admissible(const Integer& alpha_r, const Integer& r);

ArgumentPair arguments_of(const ProblemInstance& inst, const FrequencyPair& pair);

/// theta = 2 pi alpha / L. Computed with at least L's bit length plus 64
/// extra mantissa bits so that phi() can be formed from the angles.
AnglePair angles_of(const ProblemInstance& inst, const ArgumentPair& args);

/// phi = (2 pi / L) (alpha_d - alpha_r d / r), from the exact rational.
Real phi(const ProblemInstance& inst, const ArgumentPair& args);

/// The offset is the signed residue of alpha_d - round(alpha_r d / r) mod L,
/// which equals the plain difference whenever no wrap-around occurs.
GoodnessDecomposition decompose(const ProblemInstance& inst, const ArgumentPair& args);

bool is_b_good(const ProblemInstance& inst, const FrequencyPair& pair, const Integer& bound);

/// Closed-form heuristic probability of observing a pair with the given
/// arguments:
///
///   P = r / L^4 * 2(1 - cos(L theta_r / r)) / theta_r^2
///               * (cos(L phi) - 1) / (cos(phi) - 1)
///
/// with the phi -> 0 and theta_r -> 0 limits substituted near the removable
/// singularities. Trigonometric arguments are reduced exactly as rationals.
Real heuristic_density(const ProblemInstance& inst, const ArgumentPair& args);

/// Same density evaluated from real angles. The caller's angles must carry
/// enough precision for theta_d - theta_r d / r (see angles_of()).
Real heuristic_density(const ProblemInstance& inst, const AnglePair& angles);

}  // namespace dlsim
