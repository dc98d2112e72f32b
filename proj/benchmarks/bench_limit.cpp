#include <benchmark/benchmark.h>

#include "ttlab/limit_process.hpp"
#include "ttlab/moments.hpp"

using namespace ttlab;

namespace {

void BM_brownian_path(benchmark::State& state) {
  Rng rng(1);
  const std::size_t steps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    const auto path = sample_brownian(1.0, 1.0, steps, rng);
    benchmark::DoNotOptimize(path.values.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(steps));
}
BENCHMARK(BM_brownian_path)->Arg(10000)->Arg(100000);

void BM_local_time_field(benchmark::State& state) {
  Rng rng(2);
  const auto path = sample_brownian(1.0, 1.0, 100000, rng);
  const double eps = default_band_eps(1.0, path.dt);
  for (auto _ : state) {
    const auto field = local_time(path, eps, {0.5, 1.0});
    benchmark::DoNotOptimize(field.table.data());
  }
}
BENCHMARK(BM_local_time_field);

void BM_sample_Z(benchmark::State& state) {
  Rng rng(3);
  for (auto _ : state) {
    const auto z = sample_Z({0.5, 1.0, 1.0}, 1.0, 20000, rng);
    benchmark::DoNotOptimize(z.times.data());
  }
}
BENCHMARK(BM_sample_Z);

void BM_limit_moment(benchmark::State& state) {
  MomentSpec spec;
  spec.times = {1.0};
  spec.exponents = {2};
  McParams mc;
  mc.paths = 200;
  mc.steps_per_unit = 5000;
  mc.workers = 1;
  std::uint64_t seed = 1;
  for (auto _ : state) {
    mc.seed = seed++;
    const auto res = limit_moment({1.0, 1.0, 1.0}, spec, mc);
    benchmark::DoNotOptimize(res.value);
  }
}
BENCHMARK(BM_limit_moment);

}  // namespace
