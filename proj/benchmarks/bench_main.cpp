#include <benchmark/benchmark.h>

#include "thinopt/analytic_hardcore.hpp"
#include "thinopt/analytic_poisson.hpp"
#include "thinopt/dynamics.hpp"
#include "thinopt/geometry.hpp"

using namespace thinopt;

static void BM_BallWindowArea(benchmark::State& state) {
  const Window w{0, 0, 5, 5};
  double x = 0.0;
  for (auto _ : state) {
    x = x > 5.0 ? 0.0 : x + 0.013;
    benchmark::DoNotOptimize(ball_window_area({x, 0.04}, 0.1, w));
  }
}
BENCHMARK(BM_BallWindowArea);

static void BM_SInf(benchmark::State& state) {
  const ModelParams p;
  int i = 0;
  for (auto _ : state) {
    i = i == 1000 ? 0 : i + 1;
    benchmark::DoNotOptimize(s_inf(1e-4 * i, p));
  }
}
BENCHMARK(BM_SInf);

static void BM_StepPoisson(benchmark::State& state) {
  const ModelParams p;
  const Kernel k = Kernel::poisson(p);
  RngStream rng(1, 0);
  Pattern x = step(Pattern{}, k, rng);
  for (auto _ : state) {
    x = step(x, k, rng);
    benchmark::DoNotOptimize(x.size());
  }
}
BENCHMARK(BM_StepPoisson);

static void BM_StepHardcore(benchmark::State& state) {
  ModelParams p;
  p.beta = 4.3;
  const Kernel k = Kernel::hardcore(p);
  RngStream rng(1, 0);
  Pattern x = step(Pattern{}, k, rng);
  for (auto _ : state) {
    x = step(x, k, rng);
    benchmark::DoNotOptimize(x.size());
  }
}
BENCHMARK(BM_StepHardcore);

static void BM_BoundsCurve(benchmark::State& state) {
  const ModelParams p;
  RngStream rng(3, 0);
  const auto x = sample_hardcore_gibbs(p.window, 1.0, p.K, 50, p.mark_law, p.K, rng).pattern;
  const IntegrationSpec integ = state.range(0) == 0 ? IntegrationSpec{MonteCarlo{}} : IntegrationSpec{Quadrature{}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(bounds_curve(x, 50, p, p.logistic_growth(), integ));
  }
}
BENCHMARK(BM_BoundsCurve)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
