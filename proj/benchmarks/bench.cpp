#include <benchmark/benchmark.h>

#include "nanopull/conductivity.hpp"
#include "nanopull/config.hpp"
#include "nanopull/force.hpp"
#include "nanopull/green.hpp"
#include "nanopull/kernel.hpp"
#include "nanopull/solver.hpp"

using namespace nanopull;

namespace {

KernelParams reference_params() {
  Config c;
  c.frequency_thz = 210.0;
  const CntSystem sys = system_from(c);
  const Conductivity cond =
      evaluate_conductivity(thz_to_omega(210.0), sys);
  KernelParams p;
  p.alpha = cond.alpha;
  p.half_length = sys.half_length;
  p.k = wavenumber(thz_to_omega(210.0));
  p.radius = sys.radius;
  return p;
}

}  // namespace

static void BM_TubeGreenValue(benchmark::State& state) {
  const KernelParams p = reference_params();
  const TubeGreen tg{p.k, p.radius};
  double dz = 1e-9;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tg.value(dz));
    dz += 1e-12;
  }
}
BENCHMARK(BM_TubeGreenValue);

static void BM_Conductivity(benchmark::State& state) {
  Config c;
  const CntSystem sys = system_from(c);
  double f = 150.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_conductivity(thz_to_omega(f), sys));
    f = f < 250.0 ? f + 0.25 : 150.0;
  }
}
BENCHMARK(BM_Conductivity);

static void BM_AssembleSingular(benchmark::State& state) {
  const KernelParams p = reference_params();
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_kernel(n, p));
  state.SetComplexityN(n);
}
BENCHMARK(BM_AssembleSingular)->Arg(101)->Arg(205)->Arg(411)
    ->Unit(benchmark::kMillisecond)->Complexity();

static void BM_AssembleSpectral(benchmark::State& state) {
  const KernelParams p = reference_params();
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(assemble_kernel(n, p, KernelForm::Spectral));
}
BENCHMARK(BM_AssembleSpectral)->Arg(101)->Arg(205)->Arg(411)
    ->Unit(benchmark::kMillisecond);

static void BM_AssembleLocal(benchmark::State& state) {
  const KernelParams p = reference_params();
  for (auto _ : state)
    benchmark::DoNotOptimize(assemble_kernel_local(411, p, 1e3 * p.alpha));
}
BENCHMARK(BM_AssembleLocal)->Unit(benchmark::kMillisecond);

static void BM_FullSolve(benchmark::State& state) {
  Config c;
  c.frequency_thz = 210.0;
  const CntSystem sys = system_from(c);
  const Excitation exc = excitation_from(c);
  const Conductivity cond = evaluate_conductivity(exc.omega, sys);
  SolveOptions opt;
  opt.n_segments = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const Solution s = solve_current(sys, exc, cond, opt);
    benchmark::DoNotOptimize(force_numeric(s));
  }
}
BENCHMARK(BM_FullSolve)->Arg(205)->Arg(411)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
