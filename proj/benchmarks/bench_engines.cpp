#include <benchmark/benchmark.h>

#include "paretoest/exact_moments.hpp"
#include "paretoest/mc_harness.hpp"
#include "paretoest/pareto_model.hpp"
#include "paretoest/quadrature_oracle.hpp"

namespace {

using namespace paretoest;

void BM_Sample(benchmark::State& state) {
  const ParetoParams p(1.5, 1.0);
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample(p, n, seed++));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Sample)->Arg(10)->Arg(100)->Arg(1000);

void BM_ClosedFormMseUmvuePdf(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mse_umvue_pdf(n, 1.3, 1.0, 1.7));
  }
}
BENCHMARK(BM_ClosedFormMseUmvuePdf)->Arg(5)->Arg(20)->Arg(100);

void BM_QuadratureMseMlePdf(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-8;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mse_via_quadrature(
        {EstimatorTag::Mle, Target::Pdf}, n, 1.3, 1.0, 1.7, cfg));
  }
}
BENCHMARK(BM_QuadratureMseMlePdf)->Arg(5)->Arg(20)->Arg(100);

void BM_BesselMoment(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_mle_moment_bessel(n, 1.3, 1.0, 1.7, 2));
  }
}
BENCHMARK(BM_BesselMoment)->Arg(5)->Arg(20)->Arg(100);

void BM_BruteForceMoment(benchmark::State& state) {
  const long long reps = state.range(0);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        brute_force_moment({EstimatorTag::Umvue, Target::Pdf}, 1, 10, 1.0, 1.0,
                           1.5, reps, seed++));
  }
  state.SetItemsProcessed(state.iterations() * reps);
}
BENCHMARK(BM_BruteForceMoment)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
