#include "dlsim/quadrature.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "dlsim/errors.hpp"

namespace dlsim {
namespace {

// Nodes closer than this to a removable singularity take the analytic limit.
const long kSingularityExponent = -40;

bool near_zero(const Real& x) { return abs(x) < ldexp(Real(1), kSingularityExponent); }

// sin^2(pi u) / (pi u)^2
Real sinc_squared(const Real& u) {
  if (near_zero(u)) return Real(1);
  Real pu = pi() * u;
  return sin_squared(pu) / sqr(pu);
}

Real integrate_on_unit_pieces(const Rational& lo, const Rational& hi, const QuadratureConfig& cfg) {
  Real total;
  Rational left = lo;
  while (left < hi) {
    Integer floor_left;
    mpz_fdiv_q(floor_left.get_mpz_t(), left.get_num_mpz_t(), left.get_den_mpz_t());
    Rational right(floor_left + 1);
    if (right > hi) right = hi;
    total += integrate(sinc_squared, Real(left), Real(right), cfg);
    left = right;
  }
  return total;
}

}  // namespace

void QuadratureConfig::validate() const {
  if (precision_bits < 64) throw std::invalid_argument("precision_bits must be at least 64");
  if (base_panels < 2 || base_panels % 2 != 0) throw std::invalid_argument("base_panels must be even and >= 2");
  if (!(rel_tol > 0)) throw std::invalid_argument("rel_tol must be positive");
}

Real simpson(const Integrand& f, const Real& a, const Real& b, unsigned panels) {
  if (panels < 2 || panels % 2 != 0) throw std::invalid_argument("Simpson needs an even panel count");
  Real lo = to_working(a);
  Real h = (to_working(b) - lo) / Real(static_cast<long>(panels));
  Real odd, even;
  for (unsigned i = 1; i < panels; ++i) {
    Real value = f(lo + h * Real(static_cast<long>(i)));
    if (i % 2 == 1) odd += value;
    else even += value;
  }
  Real sum = f(lo) + f(to_working(b)) + Real(4) * odd + Real(2) * even;
  return sum * h / Real(3);
}

Real integrate(const Integrand& f, const Real& a, const Real& b, const QuadratureConfig& cfg) {
  cfg.validate();
  PrecisionGuard guard(cfg.precision_bits);
  const Real lo = to_working(a);
  const Real hi = to_working(b);
  if (lo == hi) return Real(0);

  // Trapezoid sums T(n) on n and 2n panels give Simpson S(2n) = (4 T(2n) - T(n)) / 3.
  unsigned long panels = cfg.base_panels / 2;
  Real h = (hi - lo) / Real(static_cast<long>(panels));
  Real trapezoid = (f(lo) + f(hi)) / Real(2);
  for (unsigned long i = 1; i < panels; ++i) trapezoid += f(lo + h * Real(static_cast<long>(i)));
  trapezoid *= h;

  std::vector<Real> previous_row;
  for (unsigned level = 0; level <= cfg.refine_limit; ++level) {
    h = ldexp(h, -1);
    Real midpoints;
    for (unsigned long i = 1; i < 2 * panels; i += 2) midpoints += f(lo + h * Real(static_cast<long>(i)));
    Real refined = ldexp(trapezoid, -1) + h * midpoints;
    panels *= 2;

    std::vector<Real> row;
    row.reserve(level + 1);
    row.push_back((Real(4) * refined - trapezoid) / Real(3));
    // Simpson's error expands in h^4, h^6, ...; column i removes h^(2i+2).
    Real factor(16);
    for (unsigned i = 1; i <= level; ++i) {
      row.push_back(row[i - 1] + (row[i - 1] - previous_row[i - 1]) / (factor - Real(1)));
      factor *= Real(4);
    }
    trapezoid = refined;

    if (level > 0) {
      const Real& estimate = row.back();
      const Real& before = previous_row.back();
      Real diff = abs(estimate - before);
      if (diff.is_zero() || diff <= Real(cfg.rel_tol) * abs(estimate)) return estimate;
      if (level == cfg.refine_limit) {
        throw ConvergenceError("Simpson/Richardson did not converge after " + std::to_string(level) + " halvings",
                               before.to_double(), estimate.to_double());
      }
    }
    previous_row = std::move(row);
  }
  throw ConvergenceError("refine_limit too small for Richardson extrapolation", 0.0,
                         previous_row.empty() ? 0.0 : previous_row.back().to_double());
}

Real delta_integral(unsigned control_bits, const Integer& offset, const QuadratureConfig& cfg) {
  cfg.validate();
  const Integer L = pow2(control_bits);
  if (2 * abs(offset) > L) throw std::invalid_argument("offset outside [-L/2, L/2]");
  PrecisionGuard guard(cfg.precision_bits);
  const long n = static_cast<long>(control_bits);
  const Real shift(offset);
  const Real limit = ldexp(Real(1), 2 * n);
  auto integrand = [&](const Real& delta) {
    Real y = shift + delta;
    if (near_zero(y)) return limit;
    Real py = pi() * y;
    return sin_squared(py) / sin_squared(ldexp(py, -n));
  };
  return integrate(integrand, Real(-0.5), Real(0.5), cfg);
}

Real radial_integral(const Rational& u_lo, const Rational& u_hi, const QuadratureConfig& cfg) {
  cfg.validate();
  if (u_lo > u_hi) throw std::invalid_argument("radial_integral requires u_lo <= u_hi");
  PrecisionGuard guard(cfg.precision_bits);
  return integrate_on_unit_pieces(u_lo, u_hi, cfg);
}

Rational admissible_half_width(const PublicInstance& pub) {
  const unsigned k = kappa(pub.r);
  return ratio(pow2(pub.control_bits() - k - 1), pub.r);
}

Real alpha_r_integral(const PublicInstance& pub, const Rational& lo, const Rational& hi,
                      const QuadratureConfig& cfg) {
  const Integer half = pow2(pub.control_bits() - kappa(pub.r) - 1);
  if (!(lo < hi)) throw std::invalid_argument("alpha_r_integral requires lo < hi");
  if (lo < Rational(-half) || hi > Rational(half)) {
    throw std::invalid_argument("alpha_r_integral bounds outside the admissible range");
  }
  PrecisionGuard guard(cfg.precision_bits);
  Rational u_lo = lo / Rational(pub.r);
  Rational u_hi = hi / Rational(pub.r);
  return radial_integral(u_lo, u_hi, cfg) / Real(pub.r);
}

Real capture_prefactor(const PublicInstance& pub) {
  const long n = static_cast<long>(pub.control_bits());
  return ldexp(Real(pub.r), static_cast<long>(kappa(pub.r)) - 2 * n);
}

std::vector<Integer> offsets_within(unsigned control_bits, const Integer& bound) {
  if (sgn(bound) < 0) throw std::invalid_argument("bound must be non-negative");
  const Integer half = pow2(control_bits - 1);
  std::vector<Integer> out{0};
  for (Integer b = 1; b <= bound && b <= half; ++b) {
    if (b < half) out.push_back(b);
    out.push_back(-b);
  }
  return out;
}

Real capture_probability(const PublicInstance& pub, const Integer& bound, const QuadratureConfig& cfg) {
  pub.validate();
  cfg.validate();
  PrecisionGuard guard(cfg.precision_bits);
  const Rational half = admissible_half_width(pub);
  const Real radial = radial_integral(-half, half, cfg);
  Real interference;
  for (const Integer& offset : offsets_within(pub.control_bits(), bound)) {
    interference += delta_integral(pub.control_bits(), offset, cfg);
  }
  return ldexp(radial * interference, static_cast<long>(kappa(pub.r)) - 2 * static_cast<long>(pub.control_bits()));
}

CaptureTable capture_table(unsigned m, const Integer& r, const std::vector<unsigned>& ells,
                           const std::vector<Integer>& bounds, const QuadratureConfig& cfg) {
  if (ells.empty() || bounds.empty()) throw std::invalid_argument("capture_table needs non-empty ranges");
  cfg.validate();
  PrecisionGuard guard(cfg.precision_bits);
  CaptureTable table;
  table.m = m;
  table.r = r;
  table.precision_bits = cfg.precision_bits;
  table.ells = ells;
  table.bounds = bounds;
  const Integer max_bound = *std::max_element(bounds.begin(), bounds.end());

  for (unsigned ell : ells) {
    PublicInstance pub{m, ell, r};
    pub.validate();
    const unsigned n = pub.control_bits();
    const Rational half = admissible_half_width(pub);
    const Real radial = radial_integral(-half, half, cfg);
    const long scale = static_cast<long>(kappa(r)) - 2 * static_cast<long>(n);

    // Offsets come ordered by |offset|, so each bound covers a prefix.
    std::vector<Integer> offsets = offsets_within(n, max_bound);
    std::vector<Real> prefix;
    prefix.reserve(offsets.size());
    Real running;
    for (const Integer& offset : offsets) {
      running += delta_integral(n, offset, cfg);
      prefix.push_back(running);
    }
    std::vector<double> row;
    for (const Integer& bound : bounds) {
      std::size_t count = 0;
      while (count < offsets.size() && abs(offsets[count]) <= bound) ++count;
      row.push_back(ldexp(radial * prefix[count - 1], scale).to_double());
    }
    table.values.push_back(std::move(row));
  }
  return table;
}

std::string format_table(const CaptureTable& table, const std::vector<std::string>& extra_comments) {
  std::ostringstream os;
  os << "# m=" << table.m << " r=" << to_hex(table.r) << " precision=" << table.precision_bits << "\n";
  for (const std::string& line : extra_comments) os << "# " << line << "\n";
  os << "ell";
  for (const Integer& b : table.bounds) os << "\tB=" << b.get_str();
  os << "\n";
  char buffer[32];
  for (std::size_t i = 0; i < table.ells.size(); ++i) {
    os << table.ells[i];
    for (double v : table.values[i]) {
      std::snprintf(buffer, sizeof buffer, "%.4f", v);
      os << "\t" << buffer;
    }
    os << "\n";
  }
  return os.str();
}

CaptureTable parse_table(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  CaptureTable table;
  if (!std::getline(in, line) || line.rfind("# m=", 0) != 0) throw MalformedInput("table: missing '# m=' header");
  {
    std::istringstream header(line.substr(2));
    std::string token;
    bool have_m = false, have_r = false, have_p = false;
    while (header >> token) {
      auto eq = token.find('=');
      if (eq == std::string::npos) throw MalformedInput("table: bad header token '" + token + "'");
      std::string key = token.substr(0, eq), value = token.substr(eq + 1);
      try {
        if (key == "m") table.m = static_cast<unsigned>(std::stoul(value)), have_m = true;
        else if (key == "r") table.r = parse_integer(value), have_r = true;
        else if (key == "precision") table.precision_bits = std::stoi(value), have_p = true;
      } catch (const std::exception&) {
        throw MalformedInput("table: bad header value '" + token + "'");
      }
    }
    if (!have_m || !have_r || !have_p) throw MalformedInput("table: incomplete header");
  }
  bool have_columns = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(row, cell, '\t')) cells.push_back(cell);
    try {
      if (!have_columns) {
        if (cells.empty() || cells[0] != "ell") throw MalformedInput("table: missing column header");
        for (std::size_t i = 1; i < cells.size(); ++i) {
          if (cells[i].rfind("B=", 0) != 0) throw MalformedInput("table: bad column '" + cells[i] + "'");
          table.bounds.push_back(parse_integer(cells[i].substr(2)));
        }
        have_columns = true;
        continue;
      }
      if (cells.size() != table.bounds.size() + 1) throw MalformedInput("table: ragged row");
      table.ells.push_back(static_cast<unsigned>(std::stoul(cells[0])));
      std::vector<double> values;
      for (std::size_t i = 1; i < cells.size(); ++i) values.push_back(std::stod(cells[i]));
      table.values.push_back(std::move(values));
    } catch (const MalformedInput&) {
      throw;
    } catch (const std::exception&) {
      throw MalformedInput("table: unparsable row '" + line + "'");
    }
  }
  if (!have_columns) throw MalformedInput("table: missing column header");
  return table;
}

}  // namespace dlsim
