#pragma once

// Numerical integration of the heuristic density and the capture
// probability it implies.
//
// With L = 2^(m+ell) and u = alpha_r / r, the mass captured by pairs with
// |offset| <= B is
//
//   2^kappa r / L^2 * A * sum_{|offset| <= B} I(offset)
//
// where A integrates (1 - cos(2 pi alpha_r / r)) / (2 pi^2 alpha_r^2) over
// the admissible range |alpha_r| <= 2^(m+ell-kappa-1), and I(offset)
// integrates the interference factor over the rounding residual
// delta in [-1/2, 1/2].

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "dlsim/kernel.hpp"
#include "dlsim/numtheory.hpp"
#include "dlsim/real.hpp"

namespace dlsim {

struct QuadratureConfig {
  int precision_bits = kDefaultPrecisionBits;
  unsigned base_panels = 64;   // Simpson panels on the first pass
  unsigned refine_limit = 20;  // maximum number of panel halvings
  double rel_tol = 1e-10;

  /// Throws std::invalid_argument on precision < 64 or odd/too few panels.
  void validate() const;
};

using Integrand = std::function<Real(const Real&)>;

/// Composite Simpson rule on `panels` (even) panels.
Real simpson(const Integrand& f, const Real& a, const Real& b, unsigned panels);

/// Composite Simpson with repeated panel halving and Richardson
/// extrapolation of the h^4, h^6, ... error terms. Stops when two
/// successive extrapolated estimates agree to cfg.rel_tol.
/// Throws ConvergenceError after cfg.refine_limit halvings.
Real integrate(const Integrand& f, const Real& a, const Real& b, const QuadratureConfig& cfg);

/// Interference integral over the rounding residual,
///   I(offset) = int_{-1/2}^{1/2} (cos(2 pi delta) - 1) / (cos(2 pi (offset + delta) / L) - 1) d delta,
/// evaluated as sin^2(pi y) / sin^2(pi y / L) with y = offset + delta.
/// Its scale is L^2; requires |offset| <= L/2.
Real delta_integral(unsigned control_bits, const Integer& offset, const QuadratureConfig& cfg);

/// int_{u_lo}^{u_hi} sin^2(pi u) / (pi u)^2 du, integrated piecewise on unit
/// intervals of u. The integrand's limit at u = 0 is 1.
Real radial_integral(const Rational& u_lo, const Rational& u_hi, const QuadratureConfig& cfg);

/// int_lo^hi (1 - cos(2 pi alpha_r / r)) / (2 pi^2 alpha_r^2) d alpha_r in
/// alpha_r units; the integrand tends to 1/r^2 at alpha_r = 0.
/// Requires lo < hi within the admissible range of `pub`.
Real alpha_r_integral(const PublicInstance& pub, const Rational& lo, const Rational& hi,
                      const QuadratureConfig& cfg);

/// Half-width 2^(m+ell-kappa-1) / r of the admissible range in u = alpha_r / r.
Rational admissible_half_width(const PublicInstance& pub);

/// 2^kappa r / L^2, the factor in front of the two integrals.
Real capture_prefactor(const PublicInstance& pub);

/// Offsets covered by |offset| <= bound, clipped to the residues [-L/2, L/2),
/// in evaluation order 0, 1, -1, 2, -2, ...
std::vector<Integer> offsets_within(unsigned control_bits, const Integer& bound);

/// Probability that one run yields a pair with |offset| <= bound.
Real capture_probability(const PublicInstance& pub, const Integer& bound, const QuadratureConfig& cfg);

/// Capture probability on an (ell, B) grid for fixed m and r.
struct CaptureTable {
  unsigned m = 0;
  Integer r;
  int precision_bits = kDefaultPrecisionBits;
  std::vector<unsigned> ells;
  std::vector<Integer> bounds;
  std::vector<std::vector<double>> values;  // values[ell index][bound index]

  double at(std::size_t ell_index, std::size_t bound_index) const { return values.at(ell_index).at(bound_index); }
};

CaptureTable capture_table(unsigned m, const Integer& r, const std::vector<unsigned>& ells,
                           const std::vector<Integer>& bounds, const QuadratureConfig& cfg);

/// Tab-separated rendering: a `# m=<m> r=<hex> precision=<bits>` line, a
/// column header `ell<TAB>B=<b>...`, then one row per ell with four-decimal
/// probabilities. `extra_comments` lines are emitted after the first line,
/// each prefixed with "# ".
std::string format_table(const CaptureTable& table, const std::vector<std::string>& extra_comments = {});

/// Inverse of format_table (values come back rounded to four decimals).
CaptureTable parse_table(std::string_view text);

}  // namespace dlsim
