#include "rpnv/analytics.hpp"
#include "rpnv/model.hpp"
#include "rpnv/propagate.hpp"
#include "rpnv/simulation.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

using namespace rpnv;

namespace {

void BM_BuildJointModel(benchmark::State& state) {
  ModelParams p;
  p.dipolar = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(build_joint_model(p));
}
BENCHMARK(BM_BuildJointModel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

// Full joint model over 3 us; range(0) selects dense (0) or Krylov (1).
void BM_Propagate(benchmark::State& state) {
  const JointModel m = build_joint_model(ModelParams{});
  const TimeGrid grid = TimeGrid::resolving(0.0, 3e-6, rabi_frequency(NVParams{}, Geometry{}));
  const Method method = state.range(0) == 0 ? Method::numeric_dense : Method::numeric_krylov;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_signal(m, grid, method));
  state.SetLabel(method == Method::numeric_dense ? "dense" : "krylov");
}
BENCHMARK(BM_Propagate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_FitKeffTrace(benchmark::State& state) {
  std::vector<double> t(401), pe(401);
  for (std::size_t i = 0; i < t.size(); ++i) {
    t[i] = 20e-6 * static_cast<double>(i) / 400.0;
    pe[i] = 0.6 * std::exp(-0.1e6 * t[i]) + 0.4 * std::exp(-0.2e6 * t[i]);
  }
  for (auto _ : state) benchmark::DoNotOptimize(fit_keff(t, pe));
}
BENCHMARK(BM_FitKeffTrace);

void BM_FitModelKeff(benchmark::State& state) {
  const ModelParams p;
  for (auto _ : state) benchmark::DoNotOptimize(fit_model_keff(p));
}
BENCHMARK(BM_FitModelKeff)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
