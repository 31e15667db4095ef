#include <benchmark/benchmark.h>

#include "rss/samplers.hpp"

using namespace rss;

namespace {

const std::vector<Distribution> kUnit2{Distribution::uniform(0, 1),
                                       Distribution::uniform(0, 1)};

void SrsGenerate(benchmark::State& state) {
  const auto count = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    RandomStream stream(1);
    benchmark::DoNotOptimize(srs(kUnit2, count, stream));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(SrsGenerate)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void LhsGenerate(benchmark::State& state) {
  const auto count = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    RandomStream stream(1);
    benchmark::DoNotOptimize(lhs(kUnit2, count, stream));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(LhsGenerate)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void LhsCorrelationReduced(benchmark::State& state) {
  const auto count = static_cast<std::size_t>(state.range(0));
  const std::vector<Distribution> unit5(5, Distribution::uniform(0, 1));
  for (auto _ : state) {
    RandomStream stream(1);
    benchmark::DoNotOptimize(lhs(unit5, count, stream, LhsPairing::correlation_reduced));
  }
}
BENCHMARK(LhsCorrelationReduced)->Arg(256)->Arg(1024);

void RssExtendFromOne(benchmark::State& state) {
  const auto target = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    RandomStream stream(1);
    benchmark::DoNotOptimize(rss_init(kUnit2, target, stream));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(RssExtendFromOne)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void HlhsDoubling(benchmark::State& state) {
  const auto start = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    RandomStream stream(1);
    SampleSet set = lhs(kUnit2, start, stream);
    set = hlhs_extend(std::move(set), 1, stream);
    benchmark::DoNotOptimize(set);
  }
}
BENCHMARK(HlhsDoubling)->Arg(128)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
