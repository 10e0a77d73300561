#include <benchmark/benchmark.h>

#include "qks/curie.hpp"
#include "qks/hamiltonian.hpp"
#include "qks/qarith.hpp"
#include "qks/spectrum.hpp"
#include "qks/thermo.hpp"

using namespace qks;

namespace {

ModelConfig chain(int n, double eta, Scaling s = Scaling::raw) {
  ModelConfig cfg = ModelConfig::uniform(n, kHalf);
  cfg.eta = eta;
  cfg.scaling = s;
  return cfg;
}

void BM_QNumber(benchmark::State& state) {
  const Deformation d(0.3);
  double n = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(q_number(n, d));
    n += 0.5;
    if (n > 1e5) n = 1.0;
  }
}
BENCHMARK(BM_QNumber);

void BM_LogQNumber(benchmark::State& state) {
  const Deformation d(9.0);
  for (auto _ : state) benchmark::DoNotOptimize(log_q_number(1e6, d));
}
BENCHMARK(BM_LogQNumber);

void BM_MultiplicityDp(benchmark::State& state) {
  const auto n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(multiplicity_dp(HalfInt(0), n, kHalf));
}
BENCHMARK(BM_MultiplicityDp)->Arg(50)->Arg(200);

void BM_MultiplicityClosedForm(benchmark::State& state) {
  const auto n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(multiplicity_spin_half(HalfInt(0), n));
}
BENCHMARK(BM_MultiplicityClosedForm)->Arg(200)->Arg(2000);

void BM_AnalyticBlocks(benchmark::State& state) {
  const ModelConfig cfg = chain(static_cast<int>(state.range(0)), 1.0, Scaling::thermodynamic);
  for (auto _ : state) benchmark::DoNotOptimize(analytic_blocks(cfg, MultiplicityMode::log));
}
BENCHMARK(BM_AnalyticBlocks)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_ObservablesLargeN(benchmark::State& state) {
  const ThermoModel model(chain(100000, 9.0, Scaling::thermodynamic));
  for (auto _ : state) benchmark::DoNotOptimize(model.observables(0.786));
}
BENCHMARK(BM_ObservablesLargeN)->Unit(benchmark::kMillisecond);

void BM_BuildCoalgebra(benchmark::State& state) {
  const ModelConfig cfg = chain(static_cast<int>(state.range(0)), 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(build_qks_coalgebra(cfg));
}
BENCHMARK(BM_BuildCoalgebra)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_BuildExplicit(benchmark::State& state) {
  const ModelConfig cfg = chain(static_cast<int>(state.range(0)), 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(build_qks_explicit(cfg));
}
BENCHMARK(BM_BuildExplicit)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Oracle(benchmark::State& state) {
  const OperatorMatrix H = build_qks_coalgebra(chain(static_cast<int>(state.range(0)), 0.5));
  for (auto _ : state) benchmark::DoNotOptimize(diagonalize_oracle(H));
}
BENCHMARK(BM_Oracle)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
