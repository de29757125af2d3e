// Microbenchmarks for the per-step cost of each optimizer and the
// multi-margin oracle evaluation.

#include <benchmark/benchmark.h>

#include "prodigy/baselines.hpp"
#include "prodigy/coordinate.hpp"
#include "prodigy/problems.hpp"
#include "prodigy/prodigy.hpp"
#include "prodigy/rng.hpp"

namespace {

using prodigy::Vec;

Vec random_vec(std::size_t n, prodigy::SplitMix64& rng) {
  Vec v(n);
  for (double& x : v) x = rng.normal();
  return v;
}

void BM_prodigy_gd_step(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  prodigy::SplitMix64 rng(1);
  prodigy::ProdigyGD opt(Vec(dim, 0.0), 1e-3, 1.0);
  const Vec g = random_vec(dim, rng);
  for (auto _ : state) {
    opt.step(g);
    benchmark::DoNotOptimize(opt.point().data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_prodigy_gd_step)->Arg(10)->Arg(1000);

void BM_prodigy_da_step(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  prodigy::SplitMix64 rng(2);
  prodigy::ProdigyDA opt(Vec(dim, 0.0), 1e-3, 1.0);
  const Vec g = random_vec(dim, rng);
  for (auto _ : state) {
    opt.step(g);
    benchmark::DoNotOptimize(opt.point().data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_prodigy_da_step)->Arg(10)->Arg(1000);

void BM_coordinate_da_step(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  prodigy::SplitMix64 rng(3);
  prodigy::CoordinateDA opt(Vec(dim, 0.0), 1e-3, 1.0);
  const Vec g = random_vec(dim, rng);
  for (auto _ : state) {
    opt.step(g);
    benchmark::DoNotOptimize(opt.point().data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_coordinate_da_step)->Arg(10)->Arg(1000);

void BM_prodigy_adam_step(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  prodigy::SplitMix64 rng(4);
  prodigy::ProdigyAdam opt(Vec(dim, 0.0), {});
  const Vec g = random_vec(dim, rng);
  for (auto _ : state) {
    opt.step(g, 1.0);
    benchmark::DoNotOptimize(opt.point().data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_prodigy_adam_step)->Arg(10)->Arg(1000);

void BM_dadapt_step(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  prodigy::SplitMix64 rng(5);
  prodigy::DAdaptation opt(Vec(dim, 0.0), 1e-3, 1.0);
  const Vec g = random_vec(dim, rng);
  for (auto _ : state) {
    opt.step(g);
    benchmark::DoNotOptimize(opt.point().data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_dadapt_step)->Arg(10)->Arg(1000);

void BM_multimargin_eval(benchmark::State& state) {
  const int samples = static_cast<int>(state.range(0));
  prodigy::Dataset data =
      prodigy::make_separable_classification(samples, 20, 3, 4.0, 7);
  prodigy::MultiMarginOracle oracle(std::move(data));
  prodigy::SplitMix64 rng(6);
  const Vec w = random_vec(static_cast<std::size_t>(oracle.dim()), rng);
  for (auto _ : state) {
    auto ev = oracle.eval(w);
    benchmark::DoNotOptimize(ev.value);
  }
  state.SetItemsProcessed(state.iterations() * samples);
}
BENCHMARK(BM_multimargin_eval)->Arg(200)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
