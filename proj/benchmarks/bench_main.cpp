#include <benchmark/benchmark.h>

#include "nbpk/densities.hpp"
#include "nbpk/levy.hpp"
#include "nbpk/point_process.hpp"
#include "nbpk/random.hpp"
#include "nbpk/simplex.hpp"

namespace {

void BM_NbJumpsStable(benchmark::State& state) {
  const auto fam = nbpk::LevyFamily::stable(0.5);
  nbpk::RandomStream rng(1);
  const nbpk::TruncationSpec trunc{1.0 / static_cast<double>(state.range(0)), 1000000, 1};
  for (auto _ : state) benchmark::DoNotOptimize(nbpk::sample_nb_jumps(fam, 2.0, trunc, rng).kept_total);
}
BENCHMARK(BM_NbJumpsStable)->Arg(100)->Arg(10000);

void BM_NbJumpsGenGamma(benchmark::State& state) {
  const auto fam = nbpk::LevyFamily::gen_gamma(0.5);
  nbpk::RandomStream rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(nbpk::sample_nb_jumps(fam, 2.0, {}, rng).kept_total);
}
BENCHMARK(BM_NbJumpsGenGamma);

void BM_PdStick(benchmark::State& state) {
  nbpk::RandomStream rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(nbpk::sample_pd_stick(0.5, 1.0, 1000, rng).deficit);
}
BENCHMARK(BM_PdStick);

void BM_RatioSeries(benchmark::State& state) {
  nbpk::RandomStream rng(4);
  for (auto _ : state) benchmark::DoNotOptimize(nbpk::sample_pd_r_ratio(0.5, 2.0, {}, rng).deficit);
}
BENCHMARK(BM_RatioSeries);

void BM_GDensity(benchmark::State& state) {
  const nbpk::DensityContext ctx{nbpk::LevyFamily::stable(0.5), 2.0};
  double t = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(nbpk::g_r_density(ctx, t));
    t = t < 10.0 ? t * 1.1 : 0.1;
  }
}
BENCHMARK(BM_GDensity);

}  // namespace

BENCHMARK_MAIN();
