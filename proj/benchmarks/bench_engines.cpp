#include <benchmark/benchmark.h>

#include <numbers>

#include "qfisim/ed/qfi.hpp"
#include "qfisim/ff/eta.hpp"
#include "qfisim/ff/qfi.hpp"
#include "qfisim/ff/quench.hpp"
#include "qfisim/model.hpp"
#include "qfisim/state.hpp"

namespace {

qfisim::ModelSpec tfi(int n) {
  qfisim::ModelSpec m;
  m.family = qfisim::ModelFamily::TFI_PERIODIC;
  m.n_sites = n;
  m.couplings = {{"J", 2.0}, {"lambda", 5.0}};
  return m;
}

void Eigendecompose(benchmark::State& state) {
  const auto hp = qfisim::build_hamiltonian(tfi(int(state.range(0))));
  for (auto _ : state) {
    auto eig = qfisim::ed::eigendecompose(hp.H);
    benchmark::DoNotOptimize(eig);
  }
  state.SetComplexityN(1 << state.range(0));
}
BENCHMARK(Eigendecompose)->DenseRange(4, 10, 2)->Complexity()->Unit(benchmark::kMillisecond);

void EdQfiPoint(benchmark::State& state) {
  const int n = int(state.range(0));
  const auto hp = qfisim::build_hamiltonian(tfi(n));
  const qfisim::ed::Engine eng(qfisim::ed::eigendecompose(hp.H), hp.dH);
  const auto w = eng.to_eigenbasis(
      qfisim::realize_product_state({n, std::numbers::pi / 2, 0.0}));
  double t = 0.0;
  for (auto _ : state) {
    t += 0.1;  // vary t so the kernel is rebuilt every iteration
    benchmark::DoNotOptimize(eng.qfi(w, t));
  }
  state.SetComplexityN(1 << state.range(0));
}
BENCHMARK(EdQfiPoint)->DenseRange(4, 12, 2)->Complexity()->Unit(benchmark::kMicrosecond);

void FfQfiPoint(benchmark::State& state) {
  const int n = int(state.range(0));
  double t = 0.0;
  for (auto _ : state) {
    t += 0.1;
    benchmark::DoNotOptimize(qfisim::ff::qfi_product_state_ff(2.0, 5.0, t, n, 0.0, 0.0));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(FfQfiPoint)->RangeMultiplier(2)->Range(8, 64)->Complexity()->Unit(benchmark::kMillisecond);

void EtaTableBuild(benchmark::State& state) {
  const int n = int(state.range(0));
  for (auto _ : state) {
    auto table = qfisim::ff::eta_table(2.0, 5.0, 1e3, n);
    benchmark::DoNotOptimize(table);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(EtaTableBuild)->RangeMultiplier(2)->Range(16, 256)->Complexity()->Unit(benchmark::kMillisecond);

void QuenchKsum(benchmark::State& state) {
  qfisim::ff::QuenchSpec q;
  q.J = 2.0;
  q.lambda = 5.0;
  q.lambda_star = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qfisim::ff::quench_asymptote_ksum(q, int(state.range(0))));
  }
}
BENCHMARK(QuenchKsum)->Arg(200)->Arg(2000)->Arg(20000);

}  // namespace

BENCHMARK_MAIN();
