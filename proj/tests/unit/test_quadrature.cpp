#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dlsim/errors.hpp"
#include "dlsim/quadrature.hpp"

using namespace dlsim;

namespace {

double rel(const Real& a, const Real& b) { return (abs(a - b) / abs(b)).to_double(); }

}  // namespace

TEST(Config, Validation) {
  QuadratureConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.base_panels = 3;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.precision_bits = 32;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(Simpson, ExactForCubics) {
  PrecisionGuard guard(192);
  const Real third = Real(1) / Real(3);
  EXPECT_LT(abs(simpson([](const Real& x) { return x * x; }, Real(0), Real(1), 2) - third).to_double(), 1e-55);
  // int_{-1}^{2} x^3 - 2x + 1 dx = 15/4 - 3 + 3 = 3.75
  const auto cubic = [](const Real& x) { return x * x * x - Real(2) * x + Real(1); };
  EXPECT_LT(abs(simpson(cubic, Real(-1), Real(2), 2) - Real(3.75)).to_double(), 1e-55);
  EXPECT_LT(abs(simpson(cubic, Real(-1), Real(2), 10) - Real(3.75)).to_double(), 1e-55);
}

TEST(Simpson, FourthOrder) {
  PrecisionGuard guard(192);
  const auto f = [](const Real& x) { return exp(x); };
  const Real exact = exp(Real(1)) - Real(1);
  for (unsigned panels : {4u, 8u, 16u, 32u}) {
    const Real e1 = abs(simpson(f, Real(0), Real(1), panels) - exact);
    const Real e2 = abs(simpson(f, Real(0), Real(1), 2 * panels) - exact);
    const double ratio = (e1 / e2).to_double();
    EXPECT_NEAR(ratio, 16.0, 0.2) << "panels=" << panels;
  }
}

TEST(Integrate, Examples) {
  QuadratureConfig cfg;
  PrecisionGuard guard(cfg.precision_bits);
  const Real x2 = integrate([](const Real& x) { return x * x; }, Real(0), Real(1), cfg);
  EXPECT_LT(abs(x2 - Real(1) / Real(3)).to_double(), 1e-40);
  const Real c = integrate([](const Real& x) { return cos(x); }, Real(0), pi() / Real(2), cfg);
  EXPECT_LT(rel(c, Real(1)), cfg.rel_tol);
  const Real a = integrate([](const Real& x) { return Real(1) / (Real(1) + x * x); }, Real(0), Real(1), cfg);
  EXPECT_LT(rel(a, atan(Real(1))), cfg.rel_tol);
}

TEST(Integrate, ConvergenceFailureCarriesEstimates) {
  QuadratureConfig cfg;
  cfg.base_panels = 2;
  cfg.refine_limit = 2;
  cfg.rel_tol = 1e-30;
  PrecisionGuard guard(cfg.precision_bits);
  try {
    integrate([](const Real& x) { return sin(Real(1000) * x); }, Real(0), Real(10), cfg);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_NE(e.previous_estimate(), e.last_estimate());
  }
}

TEST(DeltaIntegral, SumOverAllOffsetsIsLSquared) {
  // sum over y of sin^2(pi y) / sin^2(pi y / L) on a full period is L^2.
  QuadratureConfig cfg;
  for (unsigned bits : {3u, 6u}) {
    const long n = 1L << bits;
    Real total;
    for (long o = -n / 2; o < n / 2; ++o) total += delta_integral(bits, o, cfg);
    EXPECT_LT(rel(total, Real(n * n)), 1e-9) << "bits=" << bits;
  }
}

TEST(DeltaIntegral, LargeModulusMatchesRiemannSum) {
  QuadratureConfig cfg;
  const double value = ldexp(delta_integral(30, 0, cfg), -60).to_double();
  EXPECT_GT(value, 0.7);
  EXPECT_LT(value, 1.0);
  // Midpoint sum in double precision; sin(pi y / L) is well conditioned here.
  const int points = 200000;
  const double n = std::ldexp(1.0, 30);
  double sum = 0;
  for (int i = 0; i < points; ++i) {
    const double delta = -0.5 + (i + 0.5) / points;
    const double s = std::sin(std::numbers::pi * delta);
    const double t = std::sin(std::numbers::pi * delta / n) * n;
    sum += s * s / (t * t);
  }
  EXPECT_NEAR(value, sum / points, 1e-8);
}

TEST(DeltaIntegral, MirrorOffsetsAgree) {
  QuadratureConfig cfg;
  for (long o : {1L, 2L, 7L, 100L}) {
    EXPECT_LT(rel(delta_integral(20, o, cfg), delta_integral(20, -o, cfg)), 1e-9);
  }
  // Offsets 0 and -1 are not mirror images; the masses differ.
  const double i0 = delta_integral(20, 0, cfg).to_double();
  const double im1 = delta_integral(20, -1, cfg).to_double();
  EXPECT_GT(i0, 5 * im1);
}

TEST(DeltaIntegral, NormalizedValueConverges) {
  QuadratureConfig cfg;
  double previous_gap = 1;
  double previous = ldexp(delta_integral(8, 0, cfg), -16).to_double();
  for (unsigned bits = 10; bits <= 20; bits += 2) {
    const double v = ldexp(delta_integral(bits, 0, cfg), -2 * static_cast<long>(bits)).to_double();
    const double gap = std::abs(v - previous);
    EXPECT_LT(gap, previous_gap);
    previous_gap = gap;
    previous = v;
  }
}

TEST(DeltaIntegral, RejectsOffsetsBeyondHalfModulus) {
  EXPECT_THROW(delta_integral(4, 9, QuadratureConfig{}), std::invalid_argument);
}

TEST(AlphaRIntegral, LimitAtZeroAndFullLine) {
  QuadratureConfig cfg;
  PrecisionGuard guard(cfg.precision_bits);
  const PublicInstance pub{8, 10, 251};
  // Tiny symmetric interval: the integrand is ~1/r^2 there.
  const Rational eps(1, 1000000);
  const Real tiny = alpha_r_integral(pub, -eps, eps, cfg);
  EXPECT_LT(rel(tiny / Real(Rational(2) * eps), Real(Rational(1, 251 * 251))), 1e-9);
  // Truncated at 100 r the integral is within 1% of 1/r.
  const Real full = alpha_r_integral(pub, Rational(-25100), Rational(25100), cfg);
  EXPECT_LT(rel(full * Real(251), Real(1)), 0.01);
}

TEST(AlphaRIntegral, EvenIntegrand) {
  QuadratureConfig cfg;
  const PublicInstance pub{8, 4, 251};
  for (long c : {1L, 37L, 500L}) {
    EXPECT_LT(rel(alpha_r_integral(pub, Rational(-c), Rational(0), cfg),
                  alpha_r_integral(pub, Rational(0), Rational(c), cfg)),
              1e-12);
  }
}

TEST(AlphaRIntegral, TotalApproachesOneWithPadding) {
  QuadratureConfig cfg;
  double previous = 0;
  for (unsigned ell = 0; ell <= 6; ++ell) {
    const PublicInstance pub{16, ell, 65521};
    const Rational half = admissible_half_width(pub) * Rational(pub.r);
    const double total = (alpha_r_integral(pub, -half, half, cfg) * Real(pub.r)).to_double();
    EXPECT_GT(total, previous);
    EXPECT_LE(total, 1.0);
    previous = total;
  }
  EXPECT_GT(previous, 0.99);
}

TEST(Offsets, OrderAndClipping) {
  EXPECT_EQ(offsets_within(10, 2), (std::vector<Integer>{0, 1, -1, 2, -2}));
  EXPECT_EQ(offsets_within(2, 5), (std::vector<Integer>{0, 1, -1, -2}));
}

TEST(CaptureProbability, TableSpotChecks) {
  QuadratureConfig cfg;
  const Integer r = pow2(128) - 1;
  EXPECT_NEAR(capture_probability({128, 0, r}, 0, cfg).to_double(), 0.5986, 2e-4);
  EXPECT_NEAR(capture_probability({128, 5, r}, 20, cfg).to_double(), 0.9888, 2e-4);
  EXPECT_NEAR(capture_probability({128, 8, r}, 500, cfg).to_double(), 0.9990, 2e-4);
}

TEST(CaptureProbability, PrecisionInvariant) {
  QuadratureConfig low;
  QuadratureConfig high;
  high.precision_bits = 256;
  const PublicInstance pub{128, 3, pow2(128) - 1};
  for (long b : {0L, 10L}) {
    const double a = capture_probability(pub, b, low).to_double();
    const double c = capture_probability(pub, b, high).to_double();
    EXPECT_NEAR(a, c, 1e-10);
  }
}

TEST(CaptureProbability, BoundedByOneForHugeB) {
  QuadratureConfig cfg;
  const double p = capture_probability({16, 4, 65521}, 10000, cfg).to_double();
  EXPECT_LE(p, 1.0);
  EXPECT_GT(p, 0.9871);  // at least the ell = 4, B = 500 table value
}

TEST(CaptureTable, MonotoneAndRoundTrips) {
  QuadratureConfig cfg;
  const CaptureTable table = capture_table(24, pow2(24) - 3, {0, 1, 2, 3}, {0, 1, 2, 10, 50}, cfg);
  for (std::size_t i = 0; i < table.ells.size(); ++i) {
    for (std::size_t j = 0; j < table.bounds.size(); ++j) {
      EXPECT_GE(table.at(i, j), 0.0);
      EXPECT_LE(table.at(i, j), 1.0);
      if (i > 0) EXPECT_GE(table.at(i, j), table.at(i - 1, j));
      if (j > 0) EXPECT_GE(table.at(i, j), table.at(i, j - 1));
    }
  }
  const std::string text = format_table(table, {"note"});
  EXPECT_EQ(text.rfind("# m=24 r=0xfffffd precision=192\n# note\n", 0), 0u);
  const CaptureTable back = parse_table(text);
  EXPECT_EQ(back.m, table.m);
  EXPECT_EQ(back.r, table.r);
  EXPECT_EQ(back.ells, table.ells);
  EXPECT_EQ(back.bounds, table.bounds);
  EXPECT_EQ(format_table(back, {"note"}), text);
}

TEST(CaptureTable, ParseRejectsGarbage) {
  EXPECT_THROW(parse_table("hello"), MalformedInput);
  EXPECT_THROW(parse_table("# m=4 r=0xd precision=192\nell\tB=0\n0\tabc\n"), MalformedInput);
}
