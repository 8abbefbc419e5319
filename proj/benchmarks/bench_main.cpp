#include <benchmark/benchmark.h>

#include <memory>

#include "locmst/bounds.hpp"
#include "locmst/mst.hpp"
#include "locmst/sampling.hpp"
#include "locmst/weights.hpp"

namespace {

using namespace locmst;

void BM_PrimDense(benchmark::State& state) {
  const auto pts = sample_binomial(state.range(0), Density::uniform(), 7).points;
  const WeightSpec spec = WeightSpec::euclidean(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(mst_prim_dense(pts, spec).total_weight);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PrimDense)->RangeMultiplier(2)->Range(256, 4096)->Complexity(benchmark::oNSquared);

void BM_Kruskal(benchmark::State& state) {
  const auto pts = sample_binomial(state.range(0), Density::uniform(), 7).points;
  const WeightSpec spec = WeightSpec::euclidean(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(mst_kruskal(pts, spec).total_weight);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Kruskal)->RangeMultiplier(2)->Range(256, 2048);

void BM_PrimHotspot(benchmark::State& state) {
  auto layout = std::make_shared<const HotspotLayout>(build_hotspot_layout(2, 10));
  const WeightSpec spec = WeightSpec::hotspot(1.0, layout);
  const auto pts = sample_binomial(state.range(0), Density::uniform(), 7).points;
  for (auto _ : state) benchmark::DoNotOptimize(mst_prim_dense(pts, spec).total_weight);
}
BENCHMARK(BM_PrimHotspot)->Arg(2048);

void BM_SampleBinomialSplit(benchmark::State& state) {
  const Density f = Density::piecewise(7.0 / 6.0, {{{0.0, 0.0, 0.5, 0.5}, 0.5}});
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(sample_binomial(state.range(0), f, seed++).points.size());
}
BENCHMARK(BM_SampleBinomialSplit)->Arg(100000);

void BM_BetaUp(benchmark::State& state) {
  const BoundsInput in{static_cast<double>(state.range(0)), 1.0, 1.0, 1.0, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(beta_up(in).value);
}
BENCHMARK(BM_BetaUp)->Arg(1)->Arg(2);

}  // namespace
BENCHMARK_MAIN();
