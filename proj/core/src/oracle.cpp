#include "dlsim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "dlsim/errors.hpp"

namespace dlsim {

namespace {

using Complex = std::complex<long double>;

std::int64_t mod(std::int64_t a, std::int64_t n) {
  std::int64_t v = a % n;
  return v < 0 ? v + n : v;
}

std::int64_t signed_mod(std::int64_t a, std::int64_t n) {
  std::int64_t v = mod(a, n);
  return 2 * v >= n ? v - n : v;
}

// exp(2 pi i t / n) for t in [0, n).
std::vector<Complex> twiddles(std::size_t n) {
  std::vector<Complex> w(n);
  const long double two_pi = 2 * std::numbers::pi_v<long double>;
  for (std::size_t t = 0; t < n; ++t) {
    const long double angle = two_pi * static_cast<long double>(t) / static_cast<long double>(n);
    w[t] = {std::cos(angle), std::sin(angle)};
  }
  return w;
}

// In-place radix-2 transform with kernel exp(+2 pi i x k / n).
void fft(std::vector<Complex>& a, const std::vector<Complex>& w) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t step = n / len;
    const std::size_t half = len / 2;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t i = 0; i < half; ++i) {
        const Complex u = a[start + i];
        const Complex v = a[start + i + half] * w[i * step];
        a[start + i] = u + v;
        a[start + i + half] = u - v;
      }
    }
  }
}

struct SmallInstance {
  std::int64_t n;  // L
  std::int64_t r;
  std::int64_t d;
};

SmallInstance small_of(const ProblemInstance& inst, const OracleOptions& options) {
  inst.validate();
  if (inst.m + inst.ell > options.max_control_bits) {
    throw ResourceGuardError("exact distribution needs m + ell <= " + std::to_string(options.max_control_bits) +
                             ", got " + std::to_string(inst.m + inst.ell));
  }
  if (inst.m + inst.ell > 20) throw ResourceGuardError("exact distribution is limited to m + ell <= 20");
  return {std::int64_t{1} << (inst.m + inst.ell), to_int64(inst.r), to_int64(inst.d)};
}

std::vector<long double> by_autocorrelation(const SmallInstance& s) {
  const std::int64_t n = s.n;
  const auto w = twiddles(static_cast<std::size_t>(n));
  const long double scale = std::pow(static_cast<long double>(n), -4.0L);
  std::vector<long double> out(static_cast<std::size_t>(n * n));
  std::vector<Complex> by_residue(static_cast<std::size_t>(s.r));
  std::vector<Complex> g(static_cast<std::size_t>(n));
  for (std::int64_t j = 0; j < n; ++j) {
    // by_residue[c] = sum over Da = c (mod r), |Da| < n, of (n - |Da|) w^(Da j)
    std::fill(by_residue.begin(), by_residue.end(), Complex{});
    for (std::int64_t da = -n + 1; da < n; ++da) {
      const long double weight = static_cast<long double>(n - std::abs(da));
      by_residue[static_cast<std::size_t>(mod(da, s.r))] += weight * w[static_cast<std::size_t>(mod(da * j, n))];
    }
    std::fill(g.begin(), g.end(), Complex{});
    for (std::int64_t db = -n + 1; db < n; ++db) {
      const long double weight = static_cast<long double>(n - std::abs(db));
      g[static_cast<std::size_t>(mod(db, n))] += weight * by_residue[static_cast<std::size_t>(mod(db * s.d, s.r))];
    }
    fft(g, w);
    for (std::int64_t k = 0; k < n; ++k) {
      out[static_cast<std::size_t>(j * n + k)] = g[static_cast<std::size_t>(k)].real() * scale;
    }
  }
  return out;
}

std::vector<long double> by_amplitude(const SmallInstance& s) {
  const std::int64_t n = s.n;
  const auto w = twiddles(static_cast<std::size_t>(n));
  const long double scale = std::pow(static_cast<long double>(n), -4.0L);
  std::vector<long double> out(static_cast<std::size_t>(n * n));
  std::vector<Complex> class_sum(static_cast<std::size_t>(s.r));
  std::vector<Complex> v(static_cast<std::size_t>(n));
  for (std::int64_t j = 0; j < n; ++j) {
    std::fill(class_sum.begin(), class_sum.end(), Complex{});
    for (std::int64_t a = 0; a < n; ++a) {
      class_sum[static_cast<std::size_t>(a % s.r)] += w[static_cast<std::size_t>(mod(a * j, n))];
    }
    for (std::int64_t e = 0; e < s.r; ++e) {
      for (std::int64_t b = 0; b < n; ++b) {
        v[static_cast<std::size_t>(b)] = class_sum[static_cast<std::size_t>(mod(e + b * s.d, s.r))];
      }
      fft(v, w);
      for (std::int64_t k = 0; k < n; ++k) {
        out[static_cast<std::size_t>(j * n + k)] += std::norm(v[static_cast<std::size_t>(k)]);
      }
    }
    for (std::int64_t k = 0; k < n; ++k) out[static_cast<std::size_t>(j * n + k)] *= scale;
  }
  return out;
}

// round(alpha_r d / r) for every j.
std::vector<std::int64_t> rounded_centres(const ProblemInstance& inst, std::int64_t n) {
  std::vector<std::int64_t> centre(static_cast<std::size_t>(n));
  const std::int64_t r = to_int64(inst.r);
  for (std::int64_t j = 0; j < n; ++j) {
    const Integer alpha_r = signed_mod(r * j, n);
    centre[static_cast<std::size_t>(j)] = to_int64(round_nearest(ratio(Integer(alpha_r * inst.d), inst.r)));
  }
  return centre;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

ExactDistribution::ExactDistribution(ProblemInstance instance, std::vector<long double> probabilities)
    : instance_(std::move(instance)), probabilities_(std::move(probabilities)), total_(0) {
  const Integer side = instance_.public_part().modulus();
  side_ = static_cast<std::size_t>(to_int64(side));
  if (probabilities_.size() != side_ * side_) throw std::invalid_argument("distribution size does not match L^2");
  for (long double p : probabilities_) total_ += p;
}

ExactDistribution exact_distribution(const ProblemInstance& inst, const OracleOptions& options) {
  const SmallInstance s = small_of(inst, options);
  auto probs = options.path == ExactPath::autocorrelation ? by_autocorrelation(s) : by_amplitude(s);
  return ExactDistribution(inst, std::move(probs));
}

std::vector<long double> exact_offset_masses(const ExactDistribution& dist) {
  const auto n = static_cast<std::int64_t>(dist.side());
  const std::int64_t d = to_int64(dist.instance().d);
  const auto centre = rounded_centres(dist.instance(), n);
  std::vector<long double> masses(static_cast<std::size_t>(n));
  for (std::int64_t j = 0; j < n; ++j) {
    for (std::int64_t k = 0; k < n; ++k) {
      const std::int64_t offset = signed_mod(d * j + k - centre[static_cast<std::size_t>(j)], n);
      masses[static_cast<std::size_t>(offset + n / 2)] += dist.at(static_cast<std::size_t>(j), static_cast<std::size_t>(k));
    }
  }
  return masses;
}

long double exact_capture(const ExactDistribution& dist, const Integer& bound) {
  if (sgn(bound) < 0) throw std::invalid_argument("B must be non-negative");
  const auto masses = exact_offset_masses(dist);
  const auto n = static_cast<std::int64_t>(dist.side());
  long double total = 0;
  for (std::int64_t offset = -n / 2; offset < n / 2; ++offset) {
    if (std::abs(offset) <= bound) total += masses[static_cast<std::size_t>(offset + n / 2)];
  }
  return total;
}

long double exact_capture(const ProblemInstance& inst, const Integer& bound, const OracleOptions& options) {
  return exact_capture(exact_distribution(inst, options), bound);
}

std::string format_distribution(const ExactDistribution& dist) {
  const ProblemInstance& inst = dist.instance();
  std::ostringstream out;
  out << "# m=" << inst.m << " ell=" << inst.ell << " r=" << to_decimal(inst.r) << " d=" << to_decimal(inst.d)
      << '\n';
  out << "j\tk\tprobability\n";
  char buf[48];
  for (std::size_t j = 0; j < dist.side(); ++j) {
    for (std::size_t k = 0; k < dist.side(); ++k) {
      std::snprintf(buf, sizeof buf, "%.20Lg", dist.at(j, k));
      out << j << '\t' << k << '\t' << buf << '\n';
    }
  }
  return out.str();
}

bool CompareReport::within_bound() const {
  return std::all_of(captures.begin(), captures.end(),
                     [this](const CaptureComparison& c) { return c.abs_diff <= agreement_bound; });
}

CompareReport compare_report(const ProblemInstance& inst, const std::vector<Integer>& bounds,
                             const QuadratureConfig& cfg, const OracleOptions& options) {
  cfg.validate();
  const ExactDistribution dist = exact_distribution(inst, options);
  const PublicInstance pub = inst.public_part();
  const auto n = static_cast<std::int64_t>(dist.side());
  const std::int64_t r = to_int64(inst.r);
  const std::int64_t d = to_int64(inst.d);
  const auto masses = exact_offset_masses(dist);

  PrecisionGuard guard(cfg.precision_bits);
  const Rational half = admissible_half_width(pub);
  const Real radial = radial_integral(-half, half, cfg);
  const long scale_exp = static_cast<long>(kappa(pub.r)) - 2 * static_cast<long>(pub.control_bits());
  auto heuristic_mass = [&](std::int64_t offset) {
    return ldexp(radial * delta_integral(pub.control_bits(), Integer(offset), cfg), scale_exp).to_double();
  };

  CompareReport report;
  report.instance = inst;
  report.total_probability = static_cast<double>(dist.total());

  std::int64_t max_offset = 0;
  for (const Integer& bound : bounds) {
    if (sgn(bound) < 0) throw std::invalid_argument("B must be non-negative");
    max_offset = std::max<std::int64_t>(max_offset, bound > 20 ? 20 : to_int64(bound));
  }
  max_offset = std::min<std::int64_t>(max_offset, n / 2 - 1);
  max_offset = std::max<std::int64_t>(max_offset, std::min<std::int64_t>(2, n / 2 - 1));

  std::vector<double> heuristic_by_offset(static_cast<std::size_t>(n), -1.0);
  auto heuristic_at = [&](std::int64_t offset) {
    double& slot = heuristic_by_offset[static_cast<std::size_t>(offset + n / 2)];
    if (slot < 0) slot = heuristic_mass(offset);
    return slot;
  };

  for (const Integer& bound : bounds) {
    CaptureComparison row;
    row.bound = bound;
    long double exact = 0;
    double heuristic = 0;
    for (std::int64_t offset = -n / 2; offset < n / 2; ++offset) {
      if (std::abs(offset) > bound) continue;
      exact += masses[static_cast<std::size_t>(offset + n / 2)];
      heuristic += heuristic_at(offset);
    }
    row.exact = static_cast<double>(exact);
    row.heuristic = heuristic;
    row.abs_diff = std::abs(row.exact - row.heuristic);
    report.captures.push_back(row);
  }

  for (std::int64_t offset = -max_offset; offset <= max_offset; ++offset) {
    report.offsets.push_back(
        {static_cast<long>(offset), static_cast<double>(masses[static_cast<std::size_t>(offset + n / 2)]),
         heuristic_at(offset)});
  }

  for (std::int64_t offset = 1; offset <= max_offset; ++offset) {
    const long double plus = masses[static_cast<std::size_t>(offset + n / 2)];
    const long double minus = masses[static_cast<std::size_t>(-offset + n / 2)];
    const long double top = std::max(plus, minus);
    if (top <= 0) continue;
    report.max_rel_asymmetry = std::max(report.max_rel_asymmetry, static_cast<double>(std::abs(plus - minus) / top));
  }
  report.asymmetry_flagged = report.max_rel_asymmetry > 0.1;

  const auto centre = rounded_centres(inst, n);
  double sum_error = 0;
  for (std::int64_t j = 0; j < n; ++j) {
    const std::int64_t alpha_r = signed_mod(r * j, n);
    if (!is_admissible(Integer(alpha_r), inst.r)) continue;
    for (std::int64_t offset = -2; offset <= 2; ++offset) {
      const std::int64_t alpha_d = signed_mod(centre[static_cast<std::size_t>(j)] + offset, n);
      const std::int64_t k = mod(alpha_d - d * j, n);
      const long double exact = dist.at(static_cast<std::size_t>(j), static_cast<std::size_t>(k));
      if (exact <= 0) continue;
      const Real heuristic_real = heuristic_density(inst, ArgumentPair{Integer(alpha_d), Integer(alpha_r)});
      if (heuristic_real.is_zero()) {
        ++report.vanishing_pairs;
        continue;
      }
      const double heuristic = heuristic_real.to_double();
      const double error = static_cast<double>(std::abs(heuristic - exact) / exact);
      report.max_rel_density_error = std::max(report.max_rel_density_error, error);
      sum_error += error;
      ++report.density_pairs;
    }
  }
  if (report.density_pairs > 0) report.mean_rel_density_error = sum_error / static_cast<double>(report.density_pairs);
  return report;
}

std::string format_report(const CompareReport& report) {
  const ProblemInstance& inst = report.instance;
  std::ostringstream out;
  out << "# exact-compare m=" << inst.m << " ell=" << inst.ell << " r=" << to_decimal(inst.r)
      << " d=" << to_decimal(inst.d) << '\n';
  out << "total\t" << format_double(report.total_probability) << '\n';
  out << "agreement_bound\t" << format_double(report.agreement_bound) << '\n';
  out << "[capture]\n";
  out << "B\texact\theuristic\tabs_diff\n";
  for (const auto& row : report.captures) {
    out << to_decimal(row.bound) << '\t' << format_double(row.exact) << '\t' << format_double(row.heuristic) << '\t'
        << format_double(row.abs_diff) << '\n';
  }
  out << "[offsets]\n";
  out << "offset\texact\theuristic\n";
  for (const auto& row : report.offsets) {
    out << row.offset << '\t' << format_double(row.exact) << '\t' << format_double(row.heuristic) << '\n';
  }
  out << "[density]\n";
  out << "pairs\t" << report.density_pairs << '\n';
  out << "vanishing\t" << report.vanishing_pairs << '\n';
  out << "max_rel_error\t" << format_double(report.max_rel_density_error) << '\n';
  out << "mean_rel_error\t" << format_double(report.mean_rel_density_error) << '\n';
  out << "[asymmetry]\n";
  out << "max_rel_asymmetry\t" << format_double(report.max_rel_asymmetry) << '\n';
  out << "flagged\t" << (report.asymmetry_flagged ? 1 : 0) << '\n';
  return out.str();
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

double parse_double(const std::string& text) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) throw MalformedInput("bad number: " + text);
    return v;
  } catch (const std::logic_error&) {
    throw MalformedInput("bad number: " + text);
  }
}

unsigned parse_header_uint(const std::string& token, const std::string& key) {
  if (token.rfind(key + "=", 0) != 0) throw MalformedInput("expected " + key + "= in report header");
  const Integer v = parse_integer(token.substr(key.size() + 1));
  if (sgn(v) < 0 || v > 1u << 20) throw MalformedInput("bad " + key + " in report header");
  return static_cast<unsigned>(v.get_ui());
}

Integer parse_header_integer(const std::string& token, const std::string& key) {
  if (token.rfind(key + "=", 0) != 0) throw MalformedInput("expected " + key + "= in report header");
  return parse_integer(token.substr(key.size() + 1));
}

}  // namespace

CompareReport parse_report(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  // Leading comment lines (reproduction headers) precede the report header.
  do {
    if (!std::getline(in, line)) throw MalformedInput("empty report");
  } while (line.rfind("# ", 0) == 0 && line.rfind("# exact-compare ", 0) != 0);
  std::istringstream header(line);
  std::string hash, tag, m, ell, r, d;
  if (!(header >> hash >> tag >> m >> ell >> r >> d) || hash != "#" || tag != "exact-compare") {
    throw MalformedInput("bad report header");
  }
  CompareReport report;
  try {
    report.instance = {parse_header_uint(m, "m"), parse_header_uint(ell, "ell"), parse_header_integer(r, "r"),
                       parse_header_integer(d, "d")};
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw MalformedInput(std::string("bad report header: ") + e.what());
  }

  std::string section;
  bool skip_column_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.front() == '[') {
      section = line;
      skip_column_header = section == "[capture]" || section == "[offsets]";
      continue;
    }
    if (skip_column_header) {
      skip_column_header = false;
      continue;
    }
    const auto f = split_tabs(line);
    try {
      if (section.empty() && f.size() == 2 && f[0] == "total") {
        report.total_probability = parse_double(f[1]);
      } else if (section.empty() && f.size() == 2 && f[0] == "agreement_bound") {
        report.agreement_bound = parse_double(f[1]);
      } else if (section == "[capture]" && f.size() == 4) {
        report.captures.push_back({parse_integer(f[0]), parse_double(f[1]), parse_double(f[2]), parse_double(f[3])});
      } else if (section == "[offsets]" && f.size() == 3) {
        report.offsets.push_back({std::stol(f[0]), parse_double(f[1]), parse_double(f[2])});
      } else if (section == "[density]" && f.size() == 2 && f[0] == "pairs") {
        report.density_pairs = std::stoul(f[1]);
      } else if (section == "[density]" && f.size() == 2 && f[0] == "vanishing") {
        report.vanishing_pairs = std::stoul(f[1]);
      } else if (section == "[density]" && f.size() == 2 && f[0] == "max_rel_error") {
        report.max_rel_density_error = parse_double(f[1]);
      } else if (section == "[density]" && f.size() == 2 && f[0] == "mean_rel_error") {
        report.mean_rel_density_error = parse_double(f[1]);
      } else if (section == "[asymmetry]" && f.size() == 2 && f[0] == "max_rel_asymmetry") {
        report.max_rel_asymmetry = parse_double(f[1]);
      } else if (section == "[asymmetry]" && f.size() == 2 && f[0] == "flagged") {
        report.asymmetry_flagged = f[1] == "1";
      } else {
        throw MalformedInput("unexpected report line: " + line);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw MalformedInput("unexpected report line: " + line);
    }
  }
  return report;
}

}  // namespace dlsim
