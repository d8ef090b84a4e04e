#include <benchmark/benchmark.h>

#include "fracperc/lattice.hpp"
#include "fracperc/phase.hpp"
#include "fracperc/pressure.hpp"
#include "fracperc/simulator.hpp"
#include "fracperc/slice.hpp"
#include "fracperc/spectral.hpp"
#include "fracperc/type_system.hpp"

using namespace fracperc;

namespace {

const TypeSystem& diagonal() {
  static const TypeSystem ts = compute_type_system(project(menger(), Direction({1, 1, 1})));
  return ts;
}

void BM_TypeSystem(benchmark::State& state) {
  const auto line = project(menger(), Direction({1, 1, 1}));
  for (auto _ : state) benchmark::DoNotOptimize(compute_type_system(line));
}
BENCHMARK(BM_TypeSystem);

void BM_SpectralRadius(benchmark::State& state) {
  const auto& m = diagonal().matrix(1);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_radius(m));
}
BENCHMARK(BM_SpectralRadius);

void BM_PhaseReport(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(phase_report(diagonal()));
}
BENCHMARK(BM_PhaseReport);

void BM_PressureExact(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pressure(diagonal(), 2.0, n));
}
BENCHMARK(BM_PressureExact)->Arg(6)->Arg(10);

void BM_Lyapunov(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(lyapunov(diagonal(), 200, 200, 42));
}
BENCHMARK(BM_Lyapunov)->Unit(benchmark::kMillisecond);

void BM_Htilde(benchmark::State& state) {
  const PlaneParams p{Rational(1, 3), Rational(1, 3), Rational(83, 500)};
  for (auto _ : state) benchmark::DoNotOptimize(htilde(p));
}
BENCHMARK(BM_Htilde);

void BM_VerifyGrid(benchmark::State& state) {
  const Rational step(1, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_grid(step));
}
BENCHMARK(BM_VerifyGrid)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_SampleSurvival(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_survival(20, 0.16, static_cast<int>(state.range(0)), ++seed));
}
BENCHMARK(BM_SampleSurvival)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
