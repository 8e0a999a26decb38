#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "isosing/annulus2d.hpp"
#include "isosing/asymptotics.hpp"
#include "isosing/model.hpp"
#include "isosing/radial.hpp"
#include "isosing/verify.hpp"

using namespace isosing;

namespace {

const ProblemParams kSub = ProblemParams::make(1, 1, 1, 1.5);
const ProblemParams kSuper = ProblemParams::make(1, 1, 1, 3);

SolverConfig grid(int n) {
  SolverConfig c;
  c.n_points = n;
  return c;
}

const RadialProfile& sub_profile() {
  static const RadialProfile p = solve_bvp_subcritical(kSub, 1.0, 0.0);
  return p;
}

}  // namespace

static void BM_Subcritical(benchmark::State& state) {
  auto cfg = grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_bvp_subcritical(kSub, 1.0, 0.0, cfg));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Subcritical)->RangeMultiplier(2)->Range(1024, 8192)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_Critical(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(solve_bvp_critical(kSub, 0.0));
}
BENCHMARK(BM_Critical)->Unit(benchmark::kMillisecond);

static void BM_SupercriticalSingular(benchmark::State& state) {
  double phi = eikonal_constant(kSuper) - 0.1;
  for (auto _ : state) benchmark::DoNotOptimize(solve_supercritical_singular(kSuper, phi));
}
BENCHMARK(BM_SupercriticalSingular)->Unit(benchmark::kMillisecond);

static void BM_Regular(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(solve_regular(kSuper, 0.0));
}
BENCHMARK(BM_Regular)->Unit(benchmark::kMillisecond);

static void BM_Nonradial(benchmark::State& state) {
  int nt = static_cast<int>(state.range(1));
  Boundary phi(nt);
  for (int j = 0; j < nt; ++j) phi[j] = 0.3 * std::cos(2 * std::numbers::pi * j / nt);
  auto cfg = grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_nonradial(kSub, 1.0, phi, cfg, nt));
}
BENCHMARK(BM_Nonradial)->Args({512, 16})->Args({1024, 32})->Args({2048, 64})->Unit(benchmark::kMillisecond);

static void BM_Mass(benchmark::State& state) {
  const auto& p = sub_profile();
  for (auto _ : state) benchmark::DoNotOptimize(distributional_mass(p));
}
BENCHMARK(BM_Mass)->Unit(benchmark::kMicrosecond);

static void BM_Integrability(benchmark::State& state) {
  const auto& p = sub_profile();
  for (auto _ : state) benchmark::DoNotOptimize(integrability_report(p));
}
BENCHMARK(BM_Integrability)->Unit(benchmark::kMicrosecond);

static void BM_FitGamma(benchmark::State& state) {
  const auto& p = sub_profile();
  for (auto _ : state) benchmark::DoNotOptimize(fit_gamma(p));
}
BENCHMARK(BM_FitGamma)->Unit(benchmark::kMicrosecond);

static void BM_FitDecay(benchmark::State& state) {
  const auto& p = sub_profile();
  auto win = default_window(p);
  for (auto _ : state) benchmark::DoNotOptimize(fit_decay(p.t, p.w, win, DecayLimit::Fitted));
}
BENCHMARK(BM_FitDecay)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
