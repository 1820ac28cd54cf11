#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "fdstc/channel_sim.hpp"
#include "fdstc/codebook.hpp"
#include "fdstc/fastdecode.hpp"

namespace {

using namespace fdstc;

struct Workload {
  std::vector<RealMatrix> generators;
  std::vector<RealVector> observations;
  ComplexityReport grouped;
  ComplexityReport joint;
  Constellation alphabet;
};

Workload make_workload(const char* name, int q, double snr_db, int frames) {
  CodeSpec code = make_code(name);
  Workload w{{}, {}, {}, {}, Constellation::pam(q)};
  code.scale *= energy_normalization(code, w.alphabet);
  w.grouped = complexity_estimate(discover_pattern(code));
  w.joint = joint_structure(code.K());
  const double n0 = std::pow(10.0, -snr_db / 10.0);
  for (int f = 0; f < frames; ++f) {
    SplitMix rng(stream_seed(kDefaultSeed, {0xbe4c, static_cast<std::uint64_t>(f)}));
    std::vector<int> g(code.K());
    for (auto& v : g) v = w.alphabet.levels()[rng.below(w.alphabet.size())];
    const ComplexMatrix h = sample_channel(code.default_receivers, code.n_t, rng);
    const ComplexMatrix y = h * encode(code, std::span<const int>(g)) +
                            complex_gaussian(static_cast<std::size_t>(code.default_receivers),
                                             static_cast<std::size_t>(code.T), n0, rng);
    w.generators.push_back(effective_generator(code, h));
    w.observations.push_back(realify(y));
  }
  return w;
}

void run_decoder(benchmark::State& state, const char* name, int q, bool grouped) {
  const double snr = static_cast<double>(state.range(0));
  const Workload w = make_workload(name, q, snr, 64);
  std::size_t i = 0;
  std::uint64_t nodes = 0;
  for (auto _ : state) {
    const auto r = sphere_decode(w.generators[i], w.observations[i], w.alphabet, grouped ? w.grouped : w.joint);
    nodes += r.nodes;
    benchmark::DoNotOptimize(r.metric);
    i = (i + 1) % w.generators.size();
  }
  state.counters["nodes"] = benchmark::Counter(static_cast<double>(nodes), benchmark::Counter::kAvgIterations);
}

void BM_A4HalfGrouped(benchmark::State& s) { run_decoder(s, "mido_a4_half_imag", 2, true); }
void BM_A4HalfJoint(benchmark::State& s) { run_decoder(s, "mido_a4_half_imag", 2, false); }
void BM_A4Grouped(benchmark::State& s) { run_decoder(s, "mido_a4", 4, true); }
void BM_A4Joint(benchmark::State& s) { run_decoder(s, "mido_a4", 4, false); }
void BM_6x2Grouped(benchmark::State& s) { run_decoder(s, "code_6x2", 2, true); }
void BM_6x2Joint(benchmark::State& s) { run_decoder(s, "code_6x2", 2, false); }

BENCHMARK(BM_A4HalfGrouped)->Arg(8)->Arg(16);
BENCHMARK(BM_A4HalfJoint)->Arg(8)->Arg(16);
BENCHMARK(BM_A4Grouped)->Arg(8)->Arg(16);
BENCHMARK(BM_A4Joint)->Arg(8)->Arg(16);
BENCHMARK(BM_6x2Grouped)->Arg(8)->Arg(16);
BENCHMARK(BM_6x2Joint)->Arg(8)->Arg(16);

void BM_ExhaustiveOracleC2(benchmark::State& state) {
  const Workload w = make_workload("mido_c2", 2, 8.0, 4);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(exhaustive_ml(w.generators[i], w.observations[i], w.alphabet).metric);
    i = (i + 1) % w.generators.size();
  }
}
BENCHMARK(BM_ExhaustiveOracleC2)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
