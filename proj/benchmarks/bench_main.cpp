#include <benchmark/benchmark.h>

#include "annealpath/builtin_problems.hpp"
#include "annealpath/classical_analysis.hpp"
#include "annealpath/hamiltonian.hpp"
#include "annealpath/propagation.hpp"
#include "annealpath/sampler.hpp"
#include "annealpath/spectrum.hpp"

namespace {

using namespace annealpath;

void BM_TrotterStep(benchmark::State& state) {
  const auto p = builtin("487");
  const auto sch = OffsetSchedule::linear(12, 5.0);
  QuantumState psi = initial_state(12);
  for (auto _ : state) {
    apply_trotter_step(p, sch, 0.5, 1e-3, psi);
    benchmark::DoNotOptimize(psi[0]);
  }
}
BENCHMARK(BM_TrotterStep);

void BM_ExactMidpointStep(benchmark::State& state) {
  const auto p = builtin("487");
  const auto sch = OffsetSchedule::linear(12, 5.0);
  QuantumState psi = initial_state(12);
  for (auto _ : state) {
    apply_exact_midpoint_step(p, sch, 0.5, 1e-3, psi);
    benchmark::DoNotOptimize(psi[0]);
  }
}
BENCHMARK(BM_ExactMidpointStep);

// A 5 ns anneal at the default step (5000 steps).
void BM_Evolve(benchmark::State& state) {
  const auto p = builtin("26");
  const auto sch = OffsetSchedule::linear(12, 5.0);
  for (auto _ : state) {
    auto tr = evolve(p, sch, EvolutionConfig{}, initial_state(12));
    benchmark::DoNotOptimize(tr.final_state[0]);
  }
}
BENCHMARK(BM_Evolve)->Unit(benchmark::kMillisecond);

void BM_HamiltonianApply(benchmark::State& state) {
  const InstantaneousHamiltonian h(builtin("487"), OffsetSchedule::linear(12, 1.0), 0.6);
  std::vector<double> in(h.dimension(), 1.0), out(h.dimension());
  for (auto _ : state) {
    h.apply(in, out);
    benchmark::DoNotOptimize(out[0]);
  }
}
BENCHMARK(BM_HamiltonianApply);

void BM_LevelsAt(benchmark::State& state) {
  const auto p = builtin("487");
  const auto sch = OffsetSchedule::linear(12, 1.0);
  const int levels = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(levels_at(p, sch, 0.64, levels));
}
BENCHMARK(BM_LevelsAt)->Arg(2)->Arg(15)->Unit(benchmark::kMillisecond);

void BM_SampleEvents(benchmark::State& state) {
  const auto p = builtin("26");
  const auto tr = evolve(p, OffsetSchedule::linear(12, 0.5), EvolutionConfig{}, initial_state(12));
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_events(tr.final_state, n, ++seed));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleEvents)->Arg(10000)->Arg(100000);

void BM_ClassicalAnalysis(benchmark::State& state) {
  const auto p = builtin("487");
  for (auto _ : state) benchmark::DoNotOptimize(analyze(p));
}
BENCHMARK(BM_ClassicalAnalysis);

}  // namespace

BENCHMARK_MAIN();
