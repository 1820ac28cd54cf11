#include <benchmark/benchmark.h>

#include "fdstc/codebook.hpp"
#include "fdstc/fastdecode.hpp"
#include "fdstc/lattice.hpp"

namespace {

using namespace fdstc;

void BM_MinDetExhaustiveDort(benchmark::State& state) {
  const CodeSpec c = quasi_orth_dort();
  MinDetOptions o;
  o.range = static_cast<int>(state.range(0));
  o.mode = SearchMode::Exhaustive;
  for (auto _ : state) benchmark::DoNotOptimize(min_det_search(c, o).min_det);
}
BENCHMARK(BM_MinDetExhaustiveDort)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_MinDetStructuredC1(benchmark::State& state) {
  const CodeSpec c = mido_c1();
  MinDetOptions o;
  o.range = 2;
  o.mode = SearchMode::Structured;
  o.random_samples = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(min_det_search(c, o).min_det);
}
BENCHMARK(BM_MinDetStructuredC1)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_DiscoverPattern(benchmark::State& state) {
  const CodeSpec c = code_6x3();
  for (auto _ : state) benchmark::DoNotOptimize(complexity_estimate(discover_pattern(c)).kappa);
}
BENCHMARK(BM_DiscoverPattern)->Unit(benchmark::kMillisecond);

}  // namespace
