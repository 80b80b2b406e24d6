#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cstdio>
#include <filesystem>
#include <map>

#include "dlsim/errors.hpp"
#include "dlsim/histogram.hpp"

using namespace dlsim;

namespace {

const ProblemInstance kInst{12, 2, 4093, 1234};

const Histogram& shared_histogram() {
  static const Histogram hist = build_histogram(kInst, 5, 4, QuadratureConfig{});
  return hist;
}

// Index of the cell holding (offset, alpha_r).
std::size_t cell_index_of(const Histogram& hist, const Integer& offset, const Integer& alpha_r) {
  const Rational u = ratio(alpha_r, hist.instance().r);
  for (std::size_t i = 0; i < hist.cells().size(); ++i) {
    const auto& c = hist.cells()[i];
    if (c.offset == offset && c.u_lo <= u && u < c.u_hi) return i;
  }
  return hist.cells().size();
}

}  // namespace

TEST(CellBoundaries, CoverRangeAndHoldAdmissibleValues) {
  for (const PublicInstance& pub : {PublicInstance{12, 2, 4093}, PublicInstance{12, 0, 4092},
                                    PublicInstance{6, 0, 61}, PublicInstance{20, 6, 1048573}}) {
    const auto b = cell_boundaries(pub, 4);
    const Rational half = admissible_half_width(pub);
    EXPECT_EQ(b.front(), -half);
    EXPECT_EQ(b.back(), half);
    const unsigned kr = kappa(pub.r);
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
      ASSERT_LT(b[i], b[i + 1]);
      // Some multiple of 2^kappa in [b_i r, b_{i+1} r).
      const Rational lo = b[i] * Rational(pub.r);
      const Rational hi = b[i + 1] * Rational(pub.r);
      Integer first;
      mpz_cdiv_q(first.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
      const Integer step = pow2(kr);
      first = first + reduce_mod(-first, step);
      EXPECT_LT(Rational(first), hi) << "empty cell " << i;
    }
  }
  EXPECT_THROW(cell_boundaries({12, 2, 4093}, 1), std::invalid_argument);
}

TEST(CellBoundaries, DenserNearZero) {
  const auto b = cell_boundaries({20, 6, 1048573}, 4);
  Rational narrowest = b[1] - b[0];
  for (std::size_t i = 0; i + 1 < b.size(); ++i) narrowest = std::min(narrowest, Rational(b[i + 1] - b[i]));
  EXPECT_EQ(narrowest, Rational(1, 1 << 20));
}

TEST(Build, TotalMatchesCaptureProbability) {
  const Histogram& hist = shared_histogram();
  const Real capture = capture_probability(kInst.public_part(), 5, QuadratureConfig{});
  EXPECT_LT(abs(hist.total_mass() - capture).to_double(), 1e-9);
  double previous = 0;
  for (std::size_t i = 0; i < hist.cells().size(); ++i) {
    EXPECT_GE(hist.cells()[i].mass.sign(), 0);
    EXPECT_GE(hist.cumulative()[i], previous);
    previous = hist.cumulative()[i];
  }
  EXPECT_LE(hist.total_mass().to_double(), 1.0 + 1e-9);
}

TEST(Build, RejectsBadArguments) {
  EXPECT_THROW(build_histogram(kInst, -1, 4, QuadratureConfig{}), std::invalid_argument);
  EXPECT_THROW(build_histogram({12, 2, 4093, 5000}, 1, 4, QuadratureConfig{}), InvalidInstance);
}

TEST(SelectCell, Boundaries) {
  const Histogram& hist = shared_histogram();
  EXPECT_EQ(select_cell(hist, 0.0), std::optional<std::size_t>(0));
  EXPECT_FALSE(select_cell(hist, hist.cumulative().back()).has_value());
  EXPECT_FALSE(select_cell(hist, 0.9999999).has_value());
  const double mid = hist.cumulative()[10];
  EXPECT_EQ(select_cell(hist, mid), std::optional<std::size_t>(11));
}

TEST(CellToPair, ArgumentsRoundTrip) {
  const Histogram& hist = shared_histogram();
  Rng rng(4);
  for (std::size_t i = 0; i < hist.cells().size(); i += 7) {
    const auto& cell = hist.cells()[i];
    const SampledPair s = cell_to_pair(kInst, cell, rng);
    const ArgumentPair a = arguments_of(kInst, s.pair);
    EXPECT_EQ(a.alpha_r, s.alpha_r);
    const Rational u = ratio(s.alpha_r, kInst.r);
    EXPECT_TRUE(cell.u_lo <= u && u < cell.u_hi);
    EXPECT_EQ(decompose(kInst, a).offset, cell.offset);
    EXPECT_TRUE(is_b_good(kInst, s.pair, 5));
  }
}

TEST(CellToPair, EvenOrderCoversEveryLift) {
  const ProblemInstance inst{10, 1, 1020, 77};  // kappa = 2
  Rng rng(8);
  std::set<Integer> js;
  for (int i = 0; i < 400; ++i) {
    const FrequencyPair p = pair_from_arguments(inst, 8, 1, rng);
    EXPECT_EQ(arguments_of(inst, p).alpha_r, 8);
    EXPECT_EQ(decompose(inst, arguments_of(inst, p)).offset, 1);
    js.insert(p.j);
  }
  EXPECT_EQ(js.size(), 4u);
  EXPECT_THROW(pair_from_arguments(inst, 6, 0, rng), InvalidInstance);
}

TEST(CellToPair, EmptyCellThrows) {
  Rng rng(1);
  const HistogramCell cell{0, Rational(1, 10000), Rational(2, 10000), Real(0)};
  EXPECT_THROW(cell_to_pair(kInst, cell, rng), EmptyCellError);
}

TEST(Sample, DeterministicAndInstanceChecked) {
  const Histogram& hist = shared_histogram();
  Rng a(99), b(99);
  EXPECT_EQ(sample(kInst, hist, a, 200), sample(kInst, hist, b, 200));
  Rng c(1);
  EXPECT_THROW(sample({12, 2, 4093, 1}, hist, c, 1), InvalidInstance);
  EXPECT_THROW(sample(kInst, hist, c, 0), std::invalid_argument);
}

TEST(Sample, ChiSquareAgainstCellMasses) {
  const Histogram& hist = shared_histogram();
  const std::size_t draws = 200000;
  Rng rng(2024);
  std::vector<double> observed(hist.cells().size() + 1, 0.0);
  for (const auto& outcome : sample(kInst, hist, rng, draws)) {
    if (const auto* s = std::get_if<SampledPair>(&outcome)) {
      const std::size_t i = cell_index_of(hist, s->offset, s->alpha_r);
      ASSERT_LT(i, hist.cells().size());
      observed[i] += 1;
    } else {
      observed.back() += 1;
    }
  }
  std::vector<double> expected;
  for (const auto& c : hist.cells()) expected.push_back(c.mass.to_double() * draws);
  expected.push_back((1.0 - hist.total_mass().to_double()) * draws);

  // Pool consecutive bins until each expects at least 5 draws.
  double chi2 = 0, pool_o = 0, pool_e = 0;
  int bins = 0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    pool_o += observed[i];
    pool_e += expected[i];
    if (pool_e >= 5 || i + 1 == expected.size()) {
      chi2 += (pool_o - pool_e) * (pool_o - pool_e) / pool_e;
      ++bins;
      pool_o = pool_e = 0;
    }
  }
  const boost::math::chi_squared dist(bins - 1);
  const double p = boost::math::cdf(boost::math::complement(dist, chi2));
  EXPECT_GT(p, 1e-3) << "chi2=" << chi2 << " bins=" << bins;
}

TEST(Serialize, RoundTripIsFieldExact) {
  const Histogram& hist = shared_histogram();
  const auto bytes = serialize(hist);
  const Histogram back = deserialize(bytes);
  EXPECT_TRUE(back == hist);
  EXPECT_EQ(serialize(back), bytes);

  const std::string path = (std::filesystem::temp_directory_path() / "dlsim_hist_test.bin").string();
  save_histogram(hist, path);
  EXPECT_TRUE(load_histogram(path) == hist);
  std::filesystem::remove(path);
}

TEST(Serialize, DetectsCorruption) {
  const auto bytes = serialize(shared_histogram());

  auto flipped = bytes;
  flipped[bytes.size() / 2] ^= 0x01;
  EXPECT_THROW(deserialize(flipped), ParseError);

  auto crc = bytes;
  crc.back() ^= 0xff;
  EXPECT_THROW(deserialize(crc), ChecksumMismatch);

  auto version = bytes;
  version[4] = 2;
  EXPECT_THROW(deserialize(version), VersionMismatch);

  const std::vector<std::uint8_t> truncated(bytes.begin(), bytes.begin() + 40);
  EXPECT_THROW(deserialize(truncated), MalformedInput);

  auto magic = bytes;
  magic[0] = 'X';
  EXPECT_THROW(deserialize(magic), MalformedInput);
}
