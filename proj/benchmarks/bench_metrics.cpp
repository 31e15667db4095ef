#include <benchmark/benchmark.h>

#include "rss/estimators.hpp"
#include "rss/metrics.hpp"
#include "rss/samplers.hpp"

using namespace rss;

namespace {

PointSet random_points(std::size_t count, std::size_t dim) {
  RandomStream stream(7);
  PointSet pts;
  pts.dim = dim;
  pts.data.resize(count * dim);
  for (double& v : pts.data) v = stream.next_unit();
  return pts;
}

void VoronoiBruteForce(benchmark::State& state) {
  const PointSet pts = random_points(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) {
    RandomStream probes(11);
    benchmark::DoNotOptimize(
        voronoi_volumes(pts, 100000, probes, NearestMode::brute_force));
  }
}
BENCHMARK(VoronoiBruteForce)->Arg(100)->Arg(1024);

void VoronoiKdTree(benchmark::State& state) {
  const PointSet pts = random_points(static_cast<std::size_t>(state.range(0)), 5);
  for (auto _ : state) {
    RandomStream probes(11);
    benchmark::DoNotOptimize(voronoi_volumes(pts, 100000, probes, NearestMode::kd_tree));
  }
}
BENCHMARK(VoronoiKdTree)->Arg(100)->Arg(1024);

void Wd2Discrepancy(benchmark::State& state) {
  const PointSet pts = random_points(static_cast<std::size_t>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(wd2(pts));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(Wd2Discrepancy)->RangeMultiplier(2)->Range(128, 2048)->Complexity();

void WeightedBootstrapMean(benchmark::State& state) {
  const std::vector<Distribution> unit2(2, Distribution::uniform(0, 1));
  RandomStream gen(3);
  const SampleSet set = rss_init(unit2, static_cast<std::size_t>(state.range(0)), gen);
  const std::vector<double> y = set.column_x(0);
  for (auto _ : state) {
    RandomStream stream(5);
    benchmark::DoNotOptimize(
        modified_bootstrap(set, y, Statistic::mean(), 1000, stream));
  }
}
BENCHMARK(WeightedBootstrapMean)->Arg(256)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
