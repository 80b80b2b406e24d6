#pragma once

// Exact output distribution of the circuit for tiny instances, used as the
// ground truth for the heuristic model and the simulator.
//
// The probability of (j, k) is
//
//   1/L^4 * sum_e | sum_{a - b d = e (mod r)} exp(2 pi i (a j + b k) / L) |^2
//
// over a, b in [0, L). Two independent evaluation routes are provided:
//
//  * amplitude: for each e and j, the inner sum over a is a geometric
//    progression in the residue class a = e + b d (mod r); the remaining
//    sum over b is a length-L DFT. Cost O(r L^2 log L).
//  * autocorrelation: expanding |.|^2 and summing over e first leaves a DFT
//    of the pair-difference counts (L - |Da|)(L - |Db|) restricted to
//    Da = Db d (mod r). Cost O(L^2 log L), so m + ell = 12 is practical.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "dlsim/kernel.hpp"
#include "dlsim/quadrature.hpp"

namespace dlsim {

enum class ExactPath { autocorrelation, amplitude };

struct OracleOptions {
  unsigned max_control_bits = 12;
  ExactPath path = ExactPath::autocorrelation;
};

class ExactDistribution {
 public:
  ExactDistribution(ProblemInstance instance, std::vector<long double> probabilities);

  const ProblemInstance& instance() const { return instance_; }
  std::size_t side() const { return side_; }
  long double at(std::size_t j, std::size_t k) const { return probabilities_[j * side_ + k]; }
  const std::vector<long double>& probabilities() const { return probabilities_; }
  long double total() const { return total_; }

 private:
  ProblemInstance instance_;
  std::size_t side_;
  std::vector<long double> probabilities_;  // row-major in (j, k)
  long double total_;
};

/// Throws ResourceGuardError when m + ell exceeds options.max_control_bits.
ExactDistribution exact_distribution(const ProblemInstance& inst, const OracleOptions& options = {});

/// Mass per offset residue: masses[offset + L/2] for offset in [-L/2, L/2).
std::vector<long double> exact_offset_masses(const ExactDistribution& dist);

/// Total exact probability of pairs with |offset| <= bound.
long double exact_capture(const ExactDistribution& dist, const Integer& bound);
long double exact_capture(const ProblemInstance& inst, const Integer& bound, const OracleOptions& options = {});

/// `# m=.. ell=.. r=.. d=..` followed by `j<TAB>k<TAB>probability` rows.
std::string format_distribution(const ExactDistribution& dist);

struct CaptureComparison {
  Integer bound;
  double exact = 0;
  double heuristic = 0;
  double abs_diff = 0;

  friend bool operator==(const CaptureComparison&, const CaptureComparison&) = default;
};

struct OffsetComparison {
  long offset = 0;
  double exact = 0;
  double heuristic = 0;

  friend bool operator==(const OffsetComparison&, const OffsetComparison&) = default;
};

struct CompareReport {
  ProblemInstance instance;
  double total_probability = 0;
  std::vector<CaptureComparison> captures;
  std::vector<OffsetComparison> offsets;
  std::size_t density_pairs = 0;      // pairs with |offset| <= 2 and nonzero heuristic
  std::size_t vanishing_pairs = 0;    // |offset| <= 2 where the heuristic is exactly 0
  double max_rel_density_error = 0;
  double mean_rel_density_error = 0;
  double max_rel_asymmetry = 0;   // max |m(o) - m(-o)| / max(m(o), m(-o))
  bool asymmetry_flagged = false;  // max_rel_asymmetry > 10%
  double agreement_bound = 0.03;

  bool within_bound() const;
  friend bool operator==(const CompareReport&, const CompareReport&) = default;
};

CompareReport compare_report(const ProblemInstance& inst, const std::vector<Integer>& bounds,
                             const QuadratureConfig& cfg, const OracleOptions& options = {});

std::string format_report(const CompareReport& report);
/// Skips leading `# ` comment lines. Throws MalformedInput.
CompareReport parse_report(std::string_view text);

}  // namespace dlsim
