#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "CLI11.hpp"
#include "dlsim/errors.hpp"
#include "dlsim/histogram.hpp"
#include "dlsim/io.hpp"
#include "dlsim/oracle.hpp"
#include "dlsim/quadrature.hpp"
#include "dlsim/random.hpp"
#include "dlsim/solver.hpp"

#ifndef DLSIM_VERSION
#define DLSIM_VERSION "unknown"
#endif

namespace dlsim::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string m, ell, r, d;
  std::string bound;
  std::string b_max;
  std::string ells = "0..8";
  std::string bounds = "0,1,2,10,20,50,100,200,500";
  std::string j, k, g, x, p;
  std::string hist;
  std::string out;
  std::string dump;
  std::string path = "autocorrelation";
  std::uint64_t seed = 0;
  int precision = kDefaultPrecisionBits;
  double rel_tol = 1e-10;
  unsigned cells_per_unit = 4;
  std::uint64_t count = 1;
  unsigned max_control_bits = 12;
};

Integer parse_flag(const std::string& text, const std::string& name) {
  try {
    return parse_integer(text);
  } catch (const std::exception&) {
    throw UsageError("--" + name + ": not an integer: '" + text + "'");
  }
}

Integer parse_non_negative(const std::string& text, const std::string& name) {
  Integer v = parse_flag(text, name);
  if (sgn(v) < 0) throw UsageError("--" + name + " must be non-negative");
  return v;
}

unsigned parse_small(const std::string& text, const std::string& name, unsigned max = 1u << 16) {
  Integer v = parse_non_negative(text, name);
  if (v > max) throw UsageError("--" + name + " is too large");
  return static_cast<unsigned>(v.get_ui());
}

// "0..8", "0,1,2,10" or a mix such as "0..2,10".
std::vector<Integer> parse_list(const std::string& text, const std::string& name) {
  std::vector<Integer> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      values.push_back(parse_non_negative(item, name));
      continue;
    }
    const Integer lo = parse_non_negative(item.substr(0, dots), name);
    const Integer hi = parse_non_negative(item.substr(dots + 2), name);
    if (hi < lo || hi - lo > 100000) throw UsageError("--" + name + ": bad range '" + item + "'");
    for (Integer v = lo; v <= hi; ++v) values.push_back(v);
  }
  if (values.empty()) throw UsageError("--" + name + " is empty");
  return values;
}

Integer resolve_r(const std::string& text, unsigned m, Rng& rng) {
  if (text.empty()) throw UsageError("--r is required");
  if (text == "max") return pow2(m) - 1;
  if (text.rfind("prime:", 0) == 0) {
    const unsigned bits = parse_small(text.substr(6), "r");
    if (bits != m) throw UsageError("--r prime:<bits> needs bits = m");
    if (bits < 2) throw UsageError("--r prime:<bits> needs bits >= 2");
    const Integer low = pow2(bits - 1);
    while (true) {
      Integer candidate = next_prime(low + uniform_below(low, rng));
      if (candidate < pow2(bits)) return candidate;
    }
  }
  return parse_flag(text, "r");
}

PublicInstance resolve_public(const Options& o, Rng& rng) {
  if (o.m.empty()) throw UsageError("--m is required");
  PublicInstance pub;
  pub.m = parse_small(o.m, "m", 1u << 20);
  pub.ell = o.ell.empty() ? 0 : parse_small(o.ell, "ell", 1u << 20);
  pub.r = resolve_r(o.r, pub.m, rng);
  try {
    pub.validate();
  } catch (const InvalidInstance& e) {
    throw UsageError(e.what());
  }
  return pub;
}

ProblemInstance resolve_instance(const Options& o, Rng& rng) {
  const PublicInstance pub = resolve_public(o, rng);
  ProblemInstance inst{pub.m, pub.ell, pub.r, 0};
  inst.d = o.d.empty() ? uniform_below(pub.r, rng) : parse_flag(o.d, "d");
  try {
    inst.validate();
  } catch (const InvalidInstance& e) {
    throw UsageError(e.what());
  }
  return inst;
}

QuadratureConfig quadrature_config(const Options& o) {
  QuadratureConfig cfg;
  cfg.precision_bits = o.precision;
  cfg.rel_tol = o.rel_tol;
  try {
    cfg.validate();
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

std::string command_line(const std::vector<std::string>& args) {
  std::string line;
  for (const auto& a : args) {
    if (!line.empty()) line += ' ';
    line += a;
  }
  return line;
}

std::vector<std::string> reproduction_header(const std::vector<std::string>& args, const Options& o) {
  return {"dlsim " DLSIM_VERSION " " + command_line(args),
          "seed=" + std::to_string(o.seed) + " precision=" + std::to_string(o.precision)};
}

std::string comment_block(const std::vector<std::string>& lines) {
  std::string s;
  for (const auto& l : lines) s += "# " + l + "\n";
  return s;
}

std::string instance_line(const ProblemInstance& inst) {
  return "m=" + std::to_string(inst.m) + " ell=" + std::to_string(inst.ell) + " r=" + to_decimal(inst.r) +
         " d=" + to_decimal(inst.d);
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_file_atomic(path, text);
  }
}

std::string fixed(double x, int decimals = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  return buf;
}

int cmd_table(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
  Rng rng(o.seed);
  const PublicInstance pub = resolve_public(o, rng);
  std::vector<unsigned> ells;
  for (const Integer& e : parse_list(o.ells, "ell")) {
    if (e > 1u << 16) throw UsageError("--ell is too large");
    ells.push_back(static_cast<unsigned>(e.get_ui()));
  }
  const auto bounds = parse_list(o.bounds, "B");
  const QuadratureConfig cfg = quadrature_config(o);
  const CaptureTable table = capture_table(pub.m, pub.r, ells, bounds, cfg);
  emit(format_table(table, reproduction_header(args, o)), o.out, out);
  return kSuccess;
}

int cmd_build_hist(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
  if (o.out.empty()) throw UsageError("build-hist needs --out");
  if (o.b_max.empty()) throw UsageError("build-hist needs --B-max");
  Rng rng(o.seed);
  const ProblemInstance inst = resolve_instance(o, rng);
  const Integer b_max = parse_non_negative(o.b_max, "B-max");
  if (o.cells_per_unit < 2) throw UsageError("--cells-per-unit must be at least 2");
  const QuadratureConfig cfg = quadrature_config(o);
  const Histogram hist = build_histogram(inst, b_max, o.cells_per_unit, cfg);
  save_histogram(hist, o.out);
  out << comment_block(reproduction_header(args, o));
  out << "instance\t" << instance_line(inst) << '\n';
  out << "cells\t" << hist.cells().size() << '\n';
  out << "total_mass\t" << hist.total_mass().to_string(20) << '\n';
  return kSuccess;
}

// Histogram from --hist, or built from the inline instance flags.
Histogram obtain_histogram(const Options& o, Rng& rng, const Integer& default_b_max) {
  if (!o.hist.empty()) {
    if (!o.m.empty() || !o.r.empty() || !o.d.empty() || !o.ell.empty()) {
      throw UsageError("--hist cannot be combined with instance flags");
    }
    return load_histogram(o.hist);
  }
  const ProblemInstance inst = resolve_instance(o, rng);
  const Integer b_max = o.b_max.empty() ? default_b_max : parse_non_negative(o.b_max, "B-max");
  if (o.cells_per_unit < 2) throw UsageError("--cells-per-unit must be at least 2");
  return build_histogram(inst, b_max, o.cells_per_unit, quadrature_config(o));
}

int cmd_sample(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
  if (o.count < 1) throw UsageError("--count must be at least 1");
  if (o.hist.empty() && o.b_max.empty()) throw UsageError("sample needs --hist or --B-max with instance flags");
  Rng rng(o.seed);
  const Histogram hist = obtain_histogram(o, rng, 0);
  const auto outcomes = sample(hist.instance(), hist, rng, static_cast<std::size_t>(o.count));
  std::ostringstream text;
  text << comment_block(reproduction_header(args, o));
  text << "# " << instance_line(hist.instance()) << " B_max=" << to_decimal(hist.b_max()) << '\n';
  text << "j\tk\toffset\talpha_r\n";
  for (const auto& outcome : outcomes) {
    if (const auto* s = std::get_if<SampledPair>(&outcome)) {
      text << to_decimal(s->pair.j) << '\t' << to_decimal(s->pair.k) << '\t' << to_decimal(s->offset) << '\t'
           << to_decimal(s->alpha_r) << '\n';
    } else {
      text << "outside\toutside\toutside\toutside\n";
    }
  }
  emit(text.str(), o.out, out);
  return kSuccess;
}

int cmd_solve(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
  Rng rng(o.seed);
  const PublicInstance pub = resolve_public(o, rng);
  if (o.j.empty() || o.k.empty()) throw UsageError("solve needs --j and --k");
  if (o.bound.empty()) throw UsageError("solve needs --B");
  const FrequencyPair pair{parse_non_negative(o.j, "j"), parse_non_negative(o.k, "k")};
  if (pair.j >= pub.modulus() || pair.k >= pub.modulus()) throw UsageError("--j and --k must lie in [0, 2^(m+ell))");
  const Integer bound = parse_non_negative(o.bound, "B");

  const bool group = !o.g.empty() || !o.x.empty() || !o.p.empty();
  if (group && (o.g.empty() || o.x.empty() || o.p.empty())) throw UsageError("--g, --x and --p go together");
  if (group && !o.d.empty()) throw UsageError("--d cannot be combined with --g/--x/--p");

  std::ostringstream text;
  text << comment_block(reproduction_header(args, o));
  if (!group && o.d.empty()) {
    CandidateSet set;
    try {
      set = enumerate_candidates(pub, pair, bound);
    } catch (const NoInverseError&) {
      text << "status\tfailure\nreason\tz_zero\n";
      emit(text.str(), o.out, out);
      return kNoSolution;
    } catch (const TauTooLargeError&) {
      text << "status\tfailure\nreason\ttau_too_large\n";
      emit(text.str(), o.out, out);
      return kNoSolution;
    }
    text << "z\t" << to_decimal(set.z) << "\ntau\t" << to_decimal(set.tau) << "\nsearch_bound\t"
         << to_decimal(set.search_bound) << "\ncandidates\t" << set.candidates.size() << '\n';
    for (const Integer& c : set.candidates) text << to_decimal(c) << '\n';
    emit(text.str(), o.out, out);
    return kSuccess;
  }

  DlogVerifier verifier;
  if (group) {
    verifier = group_verifier(parse_non_negative(o.g, "g"), parse_non_negative(o.x, "x"),
                              parse_non_negative(o.p, "p"));
  } else {
    const Integer d = parse_non_negative(o.d, "d");
    if (d >= pub.r) throw UsageError("--d must lie in [0, r)");
    verifier = equality_verifier(d);
  }
  const SolveResult result = solve(pub, pair, bound, verifier);
  if (const auto* ok = std::get_if<SolveSuccess>(&result)) {
    text << "status\tsuccess\nd\t" << to_decimal(ok->d) << "\ncandidates_tried\t" << ok->candidates_tried << '\n';
    emit(text.str(), o.out, out);
    return kSuccess;
  }
  const auto& failure = std::get<SolveFailure>(result);
  text << "status\tfailure\nreason\t" << to_string(failure.reason) << "\ncandidates_tried\t"
       << failure.candidates_tried << '\n';
  emit(text.str(), o.out, out);
  return kNoSolution;
}

int cmd_simulate(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
  if (o.count < 1) throw UsageError("--count must be at least 1");
  if (o.bound.empty()) throw UsageError("simulate needs --B");
  const Integer bound = parse_non_negative(o.bound, "B");
  Rng rng(o.seed);
  const Histogram hist = obtain_histogram(o, rng, bound);
  const ProblemInstance& inst = hist.instance();
  const PublicInstance pub = inst.public_part();
  const DlogVerifier verifier = equality_verifier(inst.d);

  std::uint64_t success = 0, outside = 0, z_zero = 0, exhausted = 0, tau_large = 0;
  std::uint64_t solved_calls = 0, total_tried = 0, max_tried = 0;
  for (const auto& outcome : sample(inst, hist, rng, static_cast<std::size_t>(o.count))) {
    const auto* s = std::get_if<SampledPair>(&outcome);
    if (s == nullptr) {
      ++outside;
      continue;
    }
    const SolveResult result = solve(pub, s->pair, bound, verifier);
    std::size_t tried = 0;
    if (const auto* ok = std::get_if<SolveSuccess>(&result)) {
      ++success;
      tried = ok->candidates_tried;
    } else {
      const auto& failure = std::get<SolveFailure>(result);
      tried = failure.candidates_tried;
      switch (failure.reason) {
        case FailureReason::z_zero: ++z_zero; break;
        case FailureReason::exhausted: ++exhausted; break;
        case FailureReason::tau_too_large: ++tau_large; break;
      }
    }
    ++solved_calls;
    total_tried += tried;
    max_tried = std::max<std::uint64_t>(max_tried, tried);
  }

  const double n = static_cast<double>(o.count);
  auto rate_line = [&](const char* name, std::uint64_t c) {
    return std::string(name) + '\t' + std::to_string(c) + '\t' + fixed(static_cast<double>(c) / n) + '\n';
  };
  const unsigned group_ops = 2 * pub.control_bits();
  std::ostringstream text;
  text << comment_block(reproduction_header(args, o));
  text << "instance\t" << instance_line(inst) << '\n';
  text << "B\t" << to_decimal(bound) << "\nB_max\t" << to_decimal(hist.b_max()) << '\n';
  text << "count\t" << o.count << '\n';
  text << "capture_mass\t" << fixed(hist.total_mass().to_double(), 10) << '\n';
  text << rate_line("success", success);
  text << rate_line("outside_capture", outside);
  text << rate_line("no_inverse", z_zero);
  text << rate_line("exhausted", exhausted);
  text << rate_line("tau_too_large", tau_large);
  text << "candidates_mean\t"
       << fixed(solved_calls ? static_cast<double>(total_tried) / static_cast<double>(solved_calls) : 0.0, 4) << '\n';
  text << "candidates_max\t" << max_tried << '\n';
  text << "search_bound\t" << to_decimal(search_bound(bound, pub.ell)) << '\n';
  text << "group_ops_per_run\t" << group_ops << '\n';
  text << "extra_group_ops\t" << 2 * pub.ell << '\n';
  if (success > 0) {
    text << "expected_group_ops\t" << fixed(group_ops * n / static_cast<double>(success), 4) << '\n';
  } else {
    text << "expected_group_ops\tinf\n";
  }
  emit(text.str(), o.out, out);
  return kSuccess;
}

int cmd_exact_compare(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
  Rng rng(o.seed);
  const ProblemInstance inst = resolve_instance(o, rng);
  OracleOptions options;
  options.max_control_bits = o.max_control_bits;
  if (o.path == "autocorrelation") {
    options.path = ExactPath::autocorrelation;
  } else if (o.path == "amplitude") {
    options.path = ExactPath::amplitude;
  } else {
    throw UsageError("--path must be autocorrelation or amplitude");
  }
  if (inst.control_bits() > options.max_control_bits) {
    throw ResourceGuardError("exact-compare needs m + ell <= " + std::to_string(options.max_control_bits));
  }
  const auto bounds = parse_list(o.bound.empty() ? std::string("0,1,2,10") : o.bound, "B");
  const QuadratureConfig cfg = quadrature_config(o);

  const CompareReport report = compare_report(inst, bounds, cfg, options);
  emit(comment_block(reproduction_header(args, o)) + format_report(report), o.out, out);
  if (!o.dump.empty()) write_file_atomic(o.dump, format_distribution(exact_distribution(inst, options)));
  return report.within_bound() ? kSuccess : kComputationFailure;
}

int cmd_cost(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
  if (o.m.empty()) throw UsageError("--m is required");
  const unsigned m = parse_small(o.m, "m", 1u << 20);
  std::vector<unsigned> ells;
  for (const Integer& e : parse_list(o.ell.empty() ? o.ells : o.ell, "ell")) {
    if (e > 1u << 16) throw UsageError("--ell is too large");
    ells.push_back(static_cast<unsigned>(e.get_ui()));
  }
  const bool with_capture = !o.r.empty() && !o.bound.empty();
  Integer bound;
  Integer r;
  if (with_capture) {
    Rng rng(o.seed);
    r = resolve_r(o.r, m, rng);
    bound = parse_non_negative(o.bound, "B");
  }
  std::ostringstream text;
  text << comment_block(reproduction_header(args, o));
  text << "ell\tcontrol_qubits\tgroup_ops\textra_group_ops";
  if (with_capture) text << "\tcapture\texpected_group_ops";
  text << '\n';
  const QuadratureConfig cfg = quadrature_config(o);
  for (unsigned ell : ells) {
    const unsigned ops = 2 * (m + ell);
    text << ell << '\t' << m + ell << '\t' << ops << '\t' << 2 * ell;
    if (with_capture) {
      PublicInstance pub{m, ell, r};
      try {
        pub.validate();
      } catch (const InvalidInstance& e) {
        throw UsageError(e.what());
      }
      const double p = capture_probability(pub, bound, cfg).to_double();
      text << '\t' << fixed(p, 6) << '\t' << fixed(ops / p, 4);
    }
    text << '\n';
  }
  emit(text.str(), o.out, out);
  return kSuccess;
}

void add_instance_flags(CLI::App* sub, Options& o, bool with_d) {
  sub->add_option("--m", o.m, "bit length of the group order r");
  sub->add_option("--ell", o.ell, "padding length");
  sub->add_option("--r", o.r, "group order: integer, 'max' for 2^m - 1, or 'prime:<m>'");
  if (with_d) sub->add_option("--d", o.d, "discrete logarithm in [0, r); drawn from the seed when omitted");
  sub->add_option("--seed", o.seed, "seed for every random choice");
}

void add_numeric_flags(CLI::App* sub, Options& o) {
  sub->add_option("--precision", o.precision, "working precision in bits");
  sub->add_option("--rel-tol", o.rel_tol, "quadrature relative tolerance");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classical toolkit for the padded discrete-logarithm quantum algorithm", "dlsim"};
  app.set_version_flag("--version", DLSIM_VERSION);
  app.require_subcommand(1);
  Options o;

  auto* table = app.add_subcommand("table", "capture probability table over (ell, B)");
  table->add_option("--m", o.m, "bit length of r")->required();
  table->add_option("--r", o.r, "group order: integer, 'max' or 'prime:<m>'")->required();
  table->add_option("--ell", o.ells, "padding lengths, e.g. 0..8");
  table->add_option("--B", o.bounds, "offset bounds, e.g. 0,1,2,10");
  table->add_option("--seed", o.seed, "seed for 'prime:<m>'");
  table->add_option("--out,-o", o.out, "output file (default stdout)");
  add_numeric_flags(table, o);

  auto* build = app.add_subcommand("build-hist", "build and save a sampling histogram");
  add_instance_flags(build, o, true);
  build->add_option("--B-max", o.b_max, "largest offset covered");
  build->add_option("--cells-per-unit", o.cells_per_unit, "cells per unit of alpha_r / r");
  build->add_option("--out,-o", o.out, "histogram file");
  add_numeric_flags(build, o);

  auto* sample_cmd = app.add_subcommand("sample", "draw frequency pairs");
  add_instance_flags(sample_cmd, o, true);
  sample_cmd->add_option("--hist", o.hist, "histogram file from build-hist");
  sample_cmd->add_option("--B-max", o.b_max, "largest offset covered when building inline");
  sample_cmd->add_option("--cells-per-unit", o.cells_per_unit, "cells per unit when building inline");
  sample_cmd->add_option("--count", o.count, "number of samples");
  sample_cmd->add_option("--out,-o", o.out, "output file (default stdout)");
  add_numeric_flags(sample_cmd, o);

  auto* solve_cmd = app.add_subcommand("solve", "recover d from one frequency pair");
  add_instance_flags(solve_cmd, o, true);
  solve_cmd->add_option("--j", o.j, "first frequency");
  solve_cmd->add_option("--k", o.k, "second frequency");
  solve_cmd->add_option("--B", o.bound, "offset bound");
  solve_cmd->add_option("--g", o.g, "generator for a group check g^d = x (mod p)");
  solve_cmd->add_option("--x", o.x, "target element for the group check");
  solve_cmd->add_option("--p", o.p, "prime modulus for the group check");
  solve_cmd->add_option("--out,-o", o.out, "output file (default stdout)");

  auto* simulate = app.add_subcommand("simulate", "sample and solve repeatedly with a known d");
  add_instance_flags(simulate, o, true);
  simulate->add_option("--hist", o.hist, "histogram file from build-hist");
  simulate->add_option("--B", o.bound, "offset bound used by the solver");
  simulate->add_option("--B-max", o.b_max, "largest offset in the histogram (default B)");
  simulate->add_option("--cells-per-unit", o.cells_per_unit, "cells per unit when building inline");
  simulate->add_option("--count", o.count, "number of runs");
  simulate->add_option("--out,-o", o.out, "report file (default stdout)");
  add_numeric_flags(simulate, o);

  auto* exact = app.add_subcommand("exact-compare", "compare the exact distribution with the heuristic");
  add_instance_flags(exact, o, true);
  exact->add_option("--B", o.bound, "offset bounds, e.g. 0,1,2,10");
  exact->add_option("--path", o.path, "autocorrelation or amplitude");
  exact->add_option("--max-control-bits", o.max_control_bits, "resource guard on m + ell");
  exact->add_option("--dump", o.dump, "also write the exact distribution to this file");
  exact->add_option("--out,-o", o.out, "report file (default stdout)");
  add_numeric_flags(exact, o);

  auto* cost = app.add_subcommand("cost", "group operations per run");
  cost->add_option("--m", o.m, "bit length of r")->required();
  cost->add_option("--ell", o.ell, "padding lengths (default 0..8)");
  cost->add_option("--r", o.r, "group order, to add capture probabilities");
  cost->add_option("--B", o.bound, "offset bound, to add capture probabilities");
  cost->add_option("--seed", o.seed, "seed for 'prime:<m>'");
  cost->add_option("--out,-o", o.out, "output file (default stdout)");
  add_numeric_flags(cost, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (table->parsed()) return cmd_table(o, args, out);
    if (build->parsed()) return cmd_build_hist(o, args, out);
    if (sample_cmd->parsed()) return cmd_sample(o, args, out);
    if (solve_cmd->parsed()) return cmd_solve(o, args, out);
    if (simulate->parsed()) return cmd_simulate(o, args, out);
    if (exact->parsed()) return cmd_exact_compare(o, args, out);
    if (cost->parsed()) return cmd_cost(o, args, out);
    return kUsage;
  } catch (const UsageError& e) {
    err << "dlsim: " << e.what() << '\n';
    return kUsage;
  } catch (const ResourceGuardError& e) {
    err << "dlsim: resource guard: " << e.what() << '\n';
    return kResourceGuard;
  } catch (const ParseError& e) {
    err << "dlsim: bad input file: " << e.what() << '\n';
    return kInputError;
  } catch (const std::system_error& e) {
    err << "dlsim: " << e.what() << '\n';
    return kInputError;
  } catch (const ConvergenceError& e) {
    err << "dlsim: quadrature did not converge: " << e.what() << '\n';
    return kComputationFailure;
  } catch (const std::exception& e) {
    err << "dlsim: " << e.what() << '\n';
    return kComputationFailure;
  }
}

}  // namespace dlsim::cli
