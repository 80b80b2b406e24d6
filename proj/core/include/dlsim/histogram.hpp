#pragma once

// Simulator for the quantum part of the algorithm.
//
// The capture-probability integrand is integrated piecewise over small
// cells in u = alpha_r / r for every offset |offset| <= B_max. Drawing a cell
// by its mass, then an admissible alpha_r inside it, fixes alpha_d and hence
// a frequency pair (j, k) distributed like the output of a real run.
// Residual mass not covered by any cell is reported as OutsideCapture.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dlsim/errors.hpp"
#include "dlsim/kernel.hpp"
#include "dlsim/numtheory.hpp"
#include "dlsim/quadrature.hpp"
#include "dlsim/random.hpp"
#include "dlsim/real.hpp"

namespace dlsim {

inline constexpr std::uint8_t kHistogramFormatVersion = 1;
/// Significant digits kept for cell masses, in memory and on disk.
inline constexpr int kMassDigits = 40;

struct HistogramCell {
  Integer offset;
  Rational u_lo;  // alpha_r in [u_lo r, u_hi r)
  Rational u_hi;
  Real mass;

  friend bool operator==(const HistogramCell&, const HistogramCell&) = default;
};

class Histogram {
 public:
  Histogram() = default;
  Histogram(ProblemInstance instance, Integer b_max, int precision_bits, std::vector<HistogramCell> cells);

  const ProblemInstance& instance() const { return instance_; }
  const Integer& b_max() const { return b_max_; }
  int precision_bits() const { return precision_bits_; }
  const std::vector<HistogramCell>& cells() const { return cells_; }
  const Real& total_mass() const { return total_mass_; }
  /// cumulative()[i] is the mass of cells 0..i, rounded to double.
  const std::vector<double>& cumulative() const { return cumulative_; }

  friend bool operator==(const Histogram& a, const Histogram& b);

 private:
  ProblemInstance instance_;
  Integer b_max_;
  int precision_bits_ = kDefaultPrecisionBits;
  std::vector<HistogramCell> cells_;
  Real total_mass_;
  std::vector<double> cumulative_;
};

class EmptyCellError : public Error {
 public:
  using Error::Error;
};

struct OutsideCapture {
  friend bool operator==(OutsideCapture, OutsideCapture) { return true; }
};

struct SampledPair {
  FrequencyPair pair;
  Integer offset;
  Integer alpha_r;

  friend bool operator==(const SampledPair&, const SampledPair&) = default;
};

using SampledOutcome = std::variant<SampledPair, OutsideCapture>;

/// Cell boundaries in u for one offset: 16 * cells_per_unit cells per unit
/// inside |u| <= 1 with geometric refinement toward 0 down to width 2^-20,
/// cells_per_unit per unit beyond. Cells holding no admissible alpha_r are
/// merged into their right neighbour (the last one into its left).
std::vector<Rational> cell_boundaries(const PublicInstance& pub, unsigned cells_per_unit);

Histogram build_histogram(const ProblemInstance& inst, const Integer& b_max, unsigned cells_per_unit,
                          const QuadratureConfig& cfg);

/// Inverse-transform draw for a uniform `draw` in [0, 1): the index of the
/// selected cell, or nullopt for the uncaptured remainder.
std::optional<std::size_t> select_cell(const Histogram& hist, double draw);
std::optional<std::size_t> sample_cell(const Histogram& hist, Rng& rng);

/// Picks alpha_r uniformly among the admissible integers of the cell and
/// solves for (j, k). With kappa(r) > 0, one of the 2^kappa solutions j is
/// chosen uniformly. Throws EmptyCellError if the cell holds no admissible
/// alpha_r.
SampledPair cell_to_pair(const ProblemInstance& inst, const HistogramCell& cell, Rng& rng);

/// The frequency pair for a given admissible alpha_r and offset.
FrequencyPair pair_from_arguments(const ProblemInstance& inst, const Integer& alpha_r, const Integer& offset,
                                  Rng& rng);

std::vector<SampledOutcome> sample(const ProblemInstance& inst, const Histogram& hist, Rng& rng,
                                   std::size_t count);

/// Binary encoding, see docs in the README:
/// "DLSH", version u8, m u32, ell u32, r and d as u32-length-prefixed
/// big-endian magnitudes, B_max u64, precision_bits u32, cell count u64,
/// cells (offset i64; u_lo and u_hi each as signed numerator and
/// denominator; mass as a 40-digit decimal string), CRC-32 of all of it.
/// All fixed-width fields are big-endian.
std::vector<std::uint8_t> serialize(const Histogram& hist);

/// Throws MalformedInput, VersionMismatch or ChecksumMismatch.
Histogram deserialize(const std::vector<std::uint8_t>& bytes);

void save_histogram(const Histogram& hist, const std::string& path);
Histogram load_histogram(const std::string& path);

}  // namespace dlsim
