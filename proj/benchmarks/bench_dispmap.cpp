#include <dispmap/dispmap.hpp>

#include <benchmark/benchmark.h>

using namespace dispmap;

namespace {

SystemParams fig4(int n_c) { return {-2005.0, -5.0, -200.0, -1.0, 1.0, 2, n_c}; }

void BM_BuildExtendedHamiltonian(benchmark::State& state) {
  const auto p = fig4(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_extended_hamiltonian(p, 10.0));
}
BENCHMARK(BM_BuildExtendedHamiltonian)->Arg(6)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_Eigendecompose(benchmark::State& state) {
  const auto h = build_extended_hamiltonian(fig4(static_cast<int>(state.range(0))), 10.0);
  for (auto _ : state) benchmark::DoNotOptimize(eigendecompose(h));
  state.SetLabel("dim " + std::to_string(h.dim()));
}
BENCHMARK(BM_Eigendecompose)->Arg(6)->Arg(14)->Unit(benchmark::kMillisecond)->Iterations(2);

void BM_Correlations(benchmark::State& state) {
  const SystemParams p{-2005.0, -5.0, -200.0, -1.0, 5.0, 2, 14};
  const auto traj = solve_eta(p, PulseSpec::square_gaussian(50.0, 1000.0, 100.0, 50.0), 2000.0, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(correlations_timedomain(traj, p, {{1, 0}}));
}
BENCHMARK(BM_Correlations)->Unit(benchmark::kMillisecond);

void BM_PropagationStep(benchmark::State& state) {
  const SystemParams p{0.0, -5.0, -200.0, -1.0, 1.0, 2, static_cast<int>(state.range(0))};
  const Eigen::Index n = 2 * p.n_c;
  Matrix rho = Matrix::Zero(n, n);
  rho(0, 0) = 1.0;
  const auto s0 = VectorizedState::from_density(rho);
  const auto pulse = PulseSpec::constant(3.0);
  PropagationOptions opts;
  opts.record_every_ns = 1e9;
  opts.check_hermiticity = false;
  for (auto _ : state) benchmark::DoNotOptimize(propagate(s0, p, pulse, 12.5, 0.125, opts));
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_PropagationStep)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_EffectiveSpectrumGrid(benchmark::State& state) {
  const SystemParams p{-2005.0, -5.0, -200.0, -1.0, 1.0, 3, 14};
  for (auto _ : state)
    for (int m = 0; m < 3; ++m)
      for (int k = 0; k < 3; ++k) benchmark::DoNotOptimize(effective_spectrum(p, m, k, 10.0));
}
BENCHMARK(BM_EffectiveSpectrumGrid);

}  // namespace
BENCHMARK_MAIN();
