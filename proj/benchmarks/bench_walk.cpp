#include <benchmark/benchmark.h>

#include <cmath>

#include "support/test_systems.hpp"
#include "ttlab/cocycle.hpp"

using namespace ttlab;
using namespace ttlab::testing;

namespace {

void BM_exact_walk_distribution(benchmark::State& state) {
  const MarkovShift shift = full_shift(3, std::log(3.0), Sided::one);
  const Cocycle c = make_cocycle(shift, {-1, 0, 1});
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const auto dist = exact_walk_distribution(shift, c, n);
    benchmark::DoNotOptimize(dist.table.data());
  }
}
BENCHMARK(BM_exact_walk_distribution)->Arg(256)->Arg(1024);

void BM_llt_check(benchmark::State& state) {
  const MarkovShift shift = full_shift(3, std::log(3.0), Sided::one);
  const Cocycle c = make_cocycle(shift, {-1, 0, 1});
  for (auto _ : state) {
    const auto res = llt_check(shift, c, {0, 1}, {1, 2}, 1000, 0);
    benchmark::DoNotOptimize(res.exact);
  }
}
BENCHMARK(BM_llt_check);

void BM_sigma2_green_kubo(benchmark::State& state) {
  const MarkovShift shift = sticky3_shift();
  const Cocycle c = make_cocycle(shift, {-1, 0, 1});
  for (auto _ : state) {
    benchmark::DoNotOptimize(sigma2_green_kubo(shift, c));
  }
}
BENCHMARK(BM_sigma2_green_kubo);

}  // namespace
