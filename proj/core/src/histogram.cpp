#include "dlsim/histogram.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstring>
#include <limits>

#include "dlsim/io.hpp"

namespace dlsim {
namespace {

const char kMagic[4] = {'D', 'L', 'S', 'H'};

// Smallest multiple of 2^kappa that is >= value.
Integer admissible_ceil(const Rational& value, unsigned kappa_r) {
  Integer c;
  mpz_cdiv_q(c.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  Integer out;
  mpz_cdiv_q_2exp(out.get_mpz_t(), c.get_mpz_t(), kappa_r);
  return out << kappa_r;
}

// Largest multiple of 2^kappa that is < value.
Integer admissible_floor_below(const Rational& value, unsigned kappa_r) {
  Integer c;
  mpz_cdiv_q(c.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  c -= 1;
  Integer out;
  mpz_fdiv_q_2exp(out.get_mpz_t(), c.get_mpz_t(), kappa_r);
  return out << kappa_r;
}

bool holds_admissible(const Rational& u_lo, const Rational& u_hi, const Integer& r, unsigned kappa_r) {
  return Rational(admissible_ceil(u_lo * r, kappa_r)) < u_hi * r;
}

Real canonical_mass(const Real& mass) { return Real::parse(mass.to_string(kMassDigits)); }

class Writer {
 public:
  void raw(const void* data, std::size_t size) {
    const auto* p = static_cast<const std::uint8_t*>(data);
    bytes_.insert(bytes_.end(), p, p + size);
  }
  void u8(std::uint8_t v) { bytes_.push_back(v); }
  void u32(std::uint32_t v) {
    for (int s = 24; s >= 0; s -= 8) bytes_.push_back(static_cast<std::uint8_t>(v >> s));
  }
  void u64(std::uint64_t v) {
    for (int s = 56; s >= 0; s -= 8) bytes_.push_back(static_cast<std::uint8_t>(v >> s));
  }
  void magnitude(const Integer& v) {
    std::vector<std::uint8_t> b = to_bytes(abs(v));
    u32(static_cast<std::uint32_t>(b.size()));
    raw(b.data(), b.size());
  }
  void signed_integer(const Integer& v) {
    u8(sgn(v) < 0 ? 1 : 0);
    magnitude(v);
  }
  void rational(const Rational& q) {
    signed_integer(q.get_num());
    magnitude(q.get_den());
  }
  void text(const std::string& s) {
    u32(static_cast<std::uint32_t>(s.size()));
    raw(s.data(), s.size());
  }
  std::vector<std::uint8_t>& bytes() { return bytes_; }

 private:
  std::vector<std::uint8_t> bytes_;
};

class Reader {
 public:
  Reader(const std::uint8_t* data, std::size_t size) : data_(data), size_(size) {}

  const std::uint8_t* take(std::size_t n) {
    if (n > size_ - pos_) throw MalformedInput("histogram: truncated input");
    const std::uint8_t* p = data_ + pos_;
    pos_ += n;
    return p;
  }
  std::uint8_t u8() { return *take(1); }
  std::uint32_t u32() {
    const std::uint8_t* p = take(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | p[i];
    return v;
  }
  std::uint64_t u64() {
    const std::uint8_t* p = take(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | p[i];
    return v;
  }
  Integer magnitude() {
    std::uint32_t n = u32();
    const std::uint8_t* p = take(n);
    return from_bytes(p, n);
  }
  Integer signed_integer() {
    std::uint8_t sign = u8();
    if (sign > 1) throw MalformedInput("histogram: bad sign byte");
    Integer v = magnitude();
    return sign ? Integer(-v) : v;
  }
  Rational rational() {
    Integer num = signed_integer();
    Integer den = magnitude();
    if (sgn(den) == 0) throw MalformedInput("histogram: zero denominator");
    return ratio(num, den);
  }
  std::string text() {
    std::uint32_t n = u32();
    const std::uint8_t* p = take(n);
    return std::string(reinterpret_cast<const char*>(p), n);
  }
  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return size_ - pos_; }

 private:
  const std::uint8_t* data_;
  std::size_t size_;
  std::size_t pos_ = 0;
};

std::uint32_t crc32_of(const std::uint8_t* data, std::size_t size) {
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, data, static_cast<uInt>(size));
  return static_cast<std::uint32_t>(crc);
}

}  // namespace

Histogram::Histogram(ProblemInstance instance, Integer b_max, int precision_bits, std::vector<HistogramCell> cells)
    : instance_(std::move(instance)), b_max_(std::move(b_max)), precision_bits_(precision_bits), cells_(std::move(cells)) {
  PrecisionGuard guard(precision_bits_);
  Real running;
  cumulative_.reserve(cells_.size());
  for (const HistogramCell& cell : cells_) {
    running += cell.mass;
    cumulative_.push_back(running.to_double());
  }
  total_mass_ = running;
}

bool operator==(const Histogram& a, const Histogram& b) {
  return a.instance_ == b.instance_ && a.b_max_ == b.b_max_ && a.precision_bits_ == b.precision_bits_ &&
         a.cells_ == b.cells_ && a.total_mass_ == b.total_mass_;
}

std::vector<Rational> cell_boundaries(const PublicInstance& pub, unsigned cells_per_unit) {
  if (cells_per_unit < 2) throw std::invalid_argument("cells_per_unit must be at least 2");
  const Rational half = admissible_half_width(pub);
  const unsigned kappa_r = kappa(pub.r);
  const Rational one(1);
  const Rational inner = half < one ? half : one;

  std::vector<Rational> points;
  auto add_both = [&](const Rational& x) {
    points.push_back(x);
    points.push_back(-x);
  };
  const Rational fine_width = ratio(1, Integer(16u * cells_per_unit));
  for (Rational x = 0; x < inner; x += fine_width) add_both(x);
  add_both(inner);
  const Rational finest = ratio(1, pow2(20));
  for (Rational x = fine_width / 2; x >= finest && x < inner; x /= 2) add_both(x);
  if (half > one) {
    const Rational coarse_width = ratio(1, Integer(cells_per_unit));
    for (Rational x = one + coarse_width; x < half; x += coarse_width) add_both(x);
    add_both(half);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  std::vector<Rational> merged{points.front()};
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (holds_admissible(merged.back(), points[i], pub.r, kappa_r)) merged.push_back(points[i]);
  }
  if (merged.back() != points.back()) {
    if (merged.size() == 1) merged.push_back(points.back());
    else merged.back() = points.back();
  }
  return merged;
}

Histogram build_histogram(const ProblemInstance& inst, const Integer& b_max, unsigned cells_per_unit,
                          const QuadratureConfig& cfg) {
  inst.validate();
  cfg.validate();
  if (sgn(b_max) < 0) throw std::invalid_argument("B_max must be non-negative");
  if (!b_max.fits_slong_p()) throw std::invalid_argument("B_max does not fit in 64 bits");
  PrecisionGuard guard(cfg.precision_bits);

  const PublicInstance pub = inst.public_part();
  const unsigned n = pub.control_bits();
  const long scale = static_cast<long>(kappa(pub.r)) - 2 * static_cast<long>(n);
  const std::vector<Rational> bounds = cell_boundaries(pub, cells_per_unit);

  std::vector<Real> radial;
  radial.reserve(bounds.size() - 1);
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) radial.push_back(radial_integral(bounds[i], bounds[i + 1], cfg));

  std::vector<HistogramCell> cells;
  for (const Integer& offset : offsets_within(n, b_max)) {
    const Real interference = delta_integral(n, offset, cfg);
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
      cells.push_back({offset, bounds[i], bounds[i + 1], canonical_mass(ldexp(radial[i] * interference, scale))});
    }
  }
  return Histogram(inst, b_max, cfg.precision_bits, std::move(cells));
}

std::optional<std::size_t> select_cell(const Histogram& hist, double draw) {
  const auto& cumulative = hist.cumulative();
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), draw);
  if (it == cumulative.end()) return std::nullopt;
  return static_cast<std::size_t>(it - cumulative.begin());
}

std::optional<std::size_t> sample_cell(const Histogram& hist, Rng& rng) {
  return select_cell(hist, uniform_unit(rng));
}

FrequencyPair pair_from_arguments(const ProblemInstance& inst, const Integer& alpha_r, const Integer& offset,
                                  Rng& rng) {
  const Integer L = inst.modulus();
  const unsigned kappa_r = kappa(inst.r);
  if (!is_admissible(alpha_r, inst.r)) throw InvalidInstance("alpha_r is not admissible");

  const Integer alpha_d = reduce_signed(round_nearest(ratio(Integer(alpha_r * inst.d), inst.r)) + offset, L);

  // r j = alpha_r (mod L): divide out 2^kappa, invert the odd part modulo L / 2^kappa.
  const Integer reduced_modulus = L >> kappa_r;
  const Integer odd_r = inst.r >> kappa_r;
  const Integer reduced_alpha = alpha_r >> kappa_r;  // exact, alpha_r is admissible
  Integer j;
  if (reduced_modulus == 1) {
    j = 0;
  } else {
    auto inverse = mod_inverse(odd_r, reduced_modulus);
    j = reduce_mod(reduced_alpha * *inverse, reduced_modulus);
  }
  if (kappa_r > 0) j += uniform_below(pow2(kappa_r), rng) * reduced_modulus;

  const Integer k = reduce_mod(alpha_d - inst.d * j, L);
  return {j, k};
}

SampledPair cell_to_pair(const ProblemInstance& inst, const HistogramCell& cell, Rng& rng) {
  const unsigned kappa_r = kappa(inst.r);
  const Integer lo = admissible_ceil(cell.u_lo * inst.r, kappa_r);
  const Integer hi = admissible_floor_below(cell.u_hi * inst.r, kappa_r);
  if (lo > hi) throw EmptyCellError("histogram cell holds no admissible alpha_r");
  const Integer count = ((hi - lo) >> kappa_r) + 1;
  const Integer alpha_r = lo + (uniform_below(count, rng) << kappa_r);
  return {pair_from_arguments(inst, alpha_r, cell.offset, rng), cell.offset, alpha_r};
}

std::vector<SampledOutcome> sample(const ProblemInstance& inst, const Histogram& hist, Rng& rng,
                                   std::size_t count) {
  if (count == 0) throw std::invalid_argument("sample count must be at least 1");
  if (!(hist.instance() == inst)) throw InvalidInstance("histogram was built for a different instance");
  std::vector<SampledOutcome> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto index = sample_cell(hist, rng);
    if (!index) {
      out.emplace_back(OutsideCapture{});
    } else {
      out.emplace_back(cell_to_pair(inst, hist.cells()[*index], rng));
    }
  }
  return out;
}

std::vector<std::uint8_t> serialize(const Histogram& hist) {
  Writer w;
  w.raw(kMagic, sizeof kMagic);
  w.u8(kHistogramFormatVersion);
  w.u32(hist.instance().m);
  w.u32(hist.instance().ell);
  w.magnitude(hist.instance().r);
  w.magnitude(hist.instance().d);
  w.u64(static_cast<std::uint64_t>(hist.b_max().get_si()));
  w.u32(static_cast<std::uint32_t>(hist.precision_bits()));
  w.u64(hist.cells().size());
  for (const HistogramCell& cell : hist.cells()) {
    w.u64(static_cast<std::uint64_t>(to_int64(cell.offset)));
    w.rational(cell.u_lo);
    w.rational(cell.u_hi);
    w.text(cell.mass.to_string(kMassDigits));
  }
  std::vector<std::uint8_t>& bytes = w.bytes();
  w.u32(crc32_of(bytes.data(), bytes.size()));
  return std::move(bytes);
}

Histogram deserialize(const std::vector<std::uint8_t>& bytes) {
  Reader in(bytes.data(), bytes.size());
  if (std::memcmp(in.take(sizeof kMagic), kMagic, sizeof kMagic) != 0) throw MalformedInput("histogram: bad magic");
  const std::uint8_t version = in.u8();
  if (version != kHistogramFormatVersion) {
    throw VersionMismatch("histogram: unsupported format version " + std::to_string(version));
  }
  ProblemInstance inst;
  inst.m = in.u32();
  inst.ell = in.u32();
  inst.r = in.magnitude();
  inst.d = in.magnitude();
  const std::uint64_t b_max = in.u64();
  const std::uint32_t precision = in.u32();
  const std::uint64_t count = in.u64();
  if (b_max > static_cast<std::uint64_t>(std::numeric_limits<long>::max())) throw MalformedInput("histogram: B_max too large");
  if (precision < 64 || precision > (1u << 20)) throw MalformedInput("histogram: bad precision");
  // Each cell needs at least 40 bytes; rejects absurd counts before allocating.
  if (count > in.remaining() / 40) throw MalformedInput("histogram: truncated input");

  PrecisionGuard guard(static_cast<int>(precision));
  std::vector<HistogramCell> cells;
  cells.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    HistogramCell cell;
    cell.offset = Integer(static_cast<long>(in.u64()));
    cell.u_lo = in.rational();
    cell.u_hi = in.rational();
    try {
      cell.mass = Real::parse(in.text());
    } catch (const std::invalid_argument&) {
      throw MalformedInput("histogram: bad mass literal");
    }
    if (!(cell.u_lo < cell.u_hi) || cell.mass.sign() < 0) throw MalformedInput("histogram: invalid cell");
    cells.push_back(std::move(cell));
  }
  const std::size_t body = in.position();
  const std::uint32_t stored_crc = in.u32();
  if (in.remaining() != 0) throw MalformedInput("histogram: trailing bytes");
  if (stored_crc != crc32_of(bytes.data(), body)) throw ChecksumMismatch("histogram: CRC-32 mismatch");
  try {
    inst.validate();
  } catch (const InvalidInstance& e) {
    throw MalformedInput(std::string("histogram: ") + e.what());
  }
  return Histogram(std::move(inst), Integer(static_cast<long>(b_max)), static_cast<int>(precision), std::move(cells));
}

void save_histogram(const Histogram& hist, const std::string& path) { write_file_atomic(path, serialize(hist)); }

Histogram load_histogram(const std::string& path) { return deserialize(read_file_bytes(path)); }

}  // namespace dlsim
