#include <vector>

#include <benchmark/benchmark.h>

#include "dtc/dissipative.hpp"
#include "dtc/floquet.hpp"
#include "dtc/observables.hpp"

namespace {

dtc::ModelParams params(int atoms) {
  dtc::ModelParams p;
  p.atoms = atoms;
  p.epsilon = 0.1;
  p.delta = 0.6;
  p.interaction = 0.09;
  p.t2 = 15.0;
  return p;
}

void BM_CompileCycle(benchmark::State& state) {
  const auto p = params(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dtc::compile_cycle(p));
}
BENCHMARK(BM_CompileCycle)->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond);

void BM_CompileSpectral(benchmark::State& state) {
  const auto p = params(static_cast<int>(state.range(0)));
  dtc::CompileOptions o;
  o.spectral = true;
  for (auto _ : state) benchmark::DoNotOptimize(dtc::compile_cycle(p, o));
}
BENCHMARK(BM_CompileSpectral)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

// Cost per Floquet cycle.
void BM_EvolveCycles(benchmark::State& state) {
  const auto prop = dtc::compile_cycle(params(static_cast<int>(state.range(0))));
  const auto psi0 = dtc::StateVector::ground(prop.basis);
  constexpr long long kCycles = 100;
  for (auto _ : state) benchmark::DoNotOptimize(dtc::evolve(prop, psi0, kCycles));
  state.SetItemsProcessed(state.iterations() * kCycles);
}
BENCHMARK(BM_EvolveCycles)->DenseRange(6, 12, 2)->Unit(benchmark::kMicrosecond);

void BM_TranslationSector(benchmark::State& state) {
  dtc::CompileOptions o;
  o.basis = dtc::BasisKind::Translation;
  const auto prop = dtc::compile_cycle(params(static_cast<int>(state.range(0))), o);
  const auto psi0 = dtc::StateVector::ground(prop.basis);
  constexpr long long kCycles = 100;
  for (auto _ : state) benchmark::DoNotOptimize(dtc::evolve(prop, psi0, kCycles));
  state.SetItemsProcessed(state.iterations() * kCycles);
}
BENCHMARK(BM_TranslationSector)->Arg(12)->Arg(14)->Unit(benchmark::kMicrosecond);

void BM_Liouvillian(benchmark::State& state) {
  auto p = params(static_cast<int>(state.range(0)));
  p.gamma = 0.01;
  for (auto _ : state) benchmark::DoNotOptimize(dtc::build_liouvillian(p, dtc::Stage::One));
}
BENCHMARK(BM_Liouvillian)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_StagePropagator(benchmark::State& state) {
  auto p = params(static_cast<int>(state.range(0)));
  p.gamma = 0.01;
  for (auto _ : state) benchmark::DoNotOptimize(dtc::compile_stage(p, dtc::Stage::One));
}
BENCHMARK(BM_StagePropagator)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_Spectrum(benchmark::State& state) {
  std::vector<double> p(static_cast<std::size_t>(state.range(0)));
  for (std::size_t n = 0; n < p.size(); ++n) p[n] = (n % 2 ? 1.0 : -1.0) * (0.5 + 0.5 / (1.0 + n));
  for (auto _ : state) benchmark::DoNotOptimize(dtc::fourier_spectrum(p));
}
BENCHMARK(BM_Spectrum)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
