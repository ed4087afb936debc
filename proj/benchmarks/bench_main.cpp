#include <benchmark/benchmark.h>

#include <memory>
#include <random>

#include "nrgg/clique.hpp"
#include "nrgg/model.hpp"
#include "nrgg/scan.hpp"

namespace {

using namespace nrgg;

Graph erdos_renyi(std::size_t n, double q, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::bernoulli_distribution coin(q);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (coin(gen)) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(n, edges);
}

void BM_MaxCliqueER(benchmark::State& state) {
  const Graph g = erdos_renyi(static_cast<std::size_t>(state.range(0)), 0.5, 7);
  for (auto _ : state) benchmark::DoNotOptimize(max_clique(g).size);
}
BENCHMARK(BM_MaxCliqueER)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_MaxCliqueRGG(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  RegimeParams rp;
  rp.regime = Regime::Supercritical;
  rp.t = 5.0;
  rp.n = n;
  const double r = radius_for_regime(rp);
  auto base = std::make_shared<GeometricGraph>(build_geometric_graph(sample_uniform_cube(n, 2, 3), r, Norm::L2));
  const PerturbedGraph g = perturb(base, 0.0, 1.0 / std::sqrt(static_cast<double>(n)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(max_clique(g.graph()).size);
}
BENCHMARK(BM_MaxCliqueRGG)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_BuildGeometricGraph(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  RegimeParams rp;
  rp.regime = Regime::Supercritical;
  rp.t = 5.0;
  rp.n = n;
  const double r = radius_for_regime(rp);
  const PointCloud cloud = sample_uniform_cube(n, 2, 11);
  for (auto _ : state) benchmark::DoNotOptimize(build_geometric_graph(cloud, r, Norm::L2).adjacency.num_edges());
}
BENCHMARK(BM_BuildGeometricGraph)->Arg(1 << 12)->Arg(1 << 15)->Unit(benchmark::kMillisecond);

void BM_ScanPointCentered(benchmark::State& state) {
  const PointCloud cloud = sample_uniform_cube(static_cast<std::size_t>(state.range(0)), 2, 5);
  for (auto _ : state) benchmark::DoNotOptimize(scan_point_centered(cloud.points, Norm::L2, 0.05).value);
}
BENCHMARK(BM_ScanPointCentered)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
