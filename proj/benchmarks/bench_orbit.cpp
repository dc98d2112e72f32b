#include <benchmark/benchmark.h>

#include <cmath>

#include "support/test_systems.hpp"
#include "ttlab/orbit_sim.hpp"

using namespace ttlab;
using namespace ttlab::testing;

namespace {

// Throughput of the streamed return scan (the hot loop of every dynamics
// experiment): steps per second over a case-(a) system.
void BM_return_scan(benchmark::State& state) {
  const TTSystem sys = case_a_system();
  const int gen = static_cast<int>(state.range(0));
  const double r = cylinder_radius(gen, sys.x_shift.lyapunov);
  const std::uint64_t horizon = 1 << 20;
  std::uint64_t seed = 1;
  for (auto _ : state) {
    const auto scan = simulate_returns(sys, r, horizon, seed++);
    benchmark::DoNotOptimize(scan.events.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(horizon));
}
BENCHMARK(BM_return_scan)->Arg(3)->Arg(5);

void BM_first_return_multi(benchmark::State& state) {
  const TTSystem sys = case_a_system();
  std::uint64_t seed = 1;
  for (auto _ : state) {
    const auto fr = first_return_multi(sys, {2, 3, 4}, 1000.0, seed++);
    benchmark::DoNotOptimize(fr.tau.data());
  }
}
BENCHMARK(BM_first_return_multi);

void BM_markov_sample_path(benchmark::State& state) {
  const MarkovShift shift = golden_mean_shift();
  Rng rng(5);
  for (auto _ : state) {
    const Word w = sample_path(shift, 1 << 16, rng);
    benchmark::DoNotOptimize(w.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          (1 << 16));
}
BENCHMARK(BM_markov_sample_path);

}  // namespace
