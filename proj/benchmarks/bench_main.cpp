#include <benchmark/benchmark.h>

#include "dlsim/histogram.hpp"
#include "dlsim/oracle.hpp"
#include "dlsim/quadrature.hpp"
#include "dlsim/solver.hpp"

using namespace dlsim;

static void BM_DeltaIntegral(benchmark::State& state) {
  const QuadratureConfig cfg;
  const long offset = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(delta_integral(128, offset, cfg));
}
BENCHMARK(BM_DeltaIntegral)->Arg(0)->Arg(1)->Arg(50)->Unit(benchmark::kMillisecond);

static void BM_CaptureProbability(benchmark::State& state) {
  const QuadratureConfig cfg;
  const PublicInstance pub{128, 5, pow2(128) - 1};
  const long bound = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(capture_probability(pub, bound, cfg));
}
BENCHMARK(BM_CaptureProbability)->Arg(0)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_BuildHistogram(benchmark::State& state) {
  const QuadratureConfig cfg;
  const ProblemInstance inst{16, 5, 65521, 31337};
  for (auto _ : state) benchmark::DoNotOptimize(build_histogram(inst, state.range(0), 4, cfg));
}
BENCHMARK(BM_BuildHistogram)->Arg(2)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_Sample(benchmark::State& state) {
  const ProblemInstance inst{16, 5, 65521, 31337};
  const Histogram hist = build_histogram(inst, 20, 4, QuadratureConfig{});
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(sample(inst, hist, rng, 1000));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_Sample)->Unit(benchmark::kMillisecond);

static void BM_Solve(benchmark::State& state) {
  const ProblemInstance inst{128, 5, pow2(128) - 159, pow2(100) + 7};
  Rng rng(2);
  const FrequencyPair pair = pair_from_arguments(inst, pow2(120) + 3, 13, rng);
  const DlogVerifier verifier = equality_verifier(inst.d);
  for (auto _ : state) benchmark::DoNotOptimize(solve(inst.public_part(), pair, 20, verifier));
}
BENCHMARK(BM_Solve)->Unit(benchmark::kMicrosecond);

static void BM_ExactDistribution(benchmark::State& state) {
  const unsigned m = static_cast<unsigned>(state.range(0));
  Integer r = pow2(m) - 1;
  while (!is_probable_prime(r)) --r;
  OracleOptions options;
  options.path = state.range(1) == 0 ? ExactPath::autocorrelation : ExactPath::amplitude;
  for (auto _ : state) benchmark::DoNotOptimize(exact_distribution({m, 0, r, r / 3}, options));
}
BENCHMARK(BM_ExactDistribution)->Args({6, 0})->Args({6, 1})->Args({8, 0})->Args({8, 1})->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
