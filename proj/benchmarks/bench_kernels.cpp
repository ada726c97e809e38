#include <benchmark/benchmark.h>

#include "adabench/mlp.hpp"
#include "adabench/optimizer.hpp"
#include "adabench/rng.hpp"
#include "adabench/stable.hpp"

using namespace adabench;

namespace {

void BM_Step(benchmark::State& state, const char* name) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const OptimizerConfig c = named_optimizer(name);
  OptimizerState s(c.kernel, dim);
  ParamVector theta(dim, 0.5);
  RngStream rng(1, 0);
  ParamVector g(dim);
  for (auto& x : g) x = rng.normal();
  for (auto _ : state) {
    step(s, theta, g, c.hp);
    benchmark::DoNotOptimize(theta.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK_CAPTURE(BM_Step, adamomentum, "adamomentum")->Range(8, 1 << 16);
BENCHMARK_CAPTURE(BM_Step, adam, "adam")->Range(8, 1 << 16);

void BM_SasSample(benchmark::State& state) {
  const double tail = static_cast<double>(state.range(0)) / 10.0;
  const StableNoiseSpec spec = StableNoiseSpec::isotropic(tail, 1.0);
  RngStream rng(2, 0);
  for (auto _ : state) benchmark::DoNotOptimize(sas_sample(spec, rng, 1024));
  state.SetItemsProcessed(state.iterations() * 1024);
}
BENCHMARK(BM_SasSample)->Arg(10)->Arg(15)->Arg(20);

void BM_MlpBackward(benchmark::State& state) {
  MlpSpec spec;
  spec.widths = {10, 30, 30, 30, 30, 1};
  const Batch data = synthetic_teacher_regression(10, 1, static_cast<std::size_t>(state.range(0)), 3);
  RngStream rng(3, 0);
  const ParamVector w = mlp_init(spec, rng);
  for (auto _ : state) {
    const ForwardResult fwd = mlp_forward(spec, w, data);
    benchmark::DoNotOptimize(mlp_backward(spec, w, fwd.cache));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MlpBackward)->Arg(32)->Arg(128)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
