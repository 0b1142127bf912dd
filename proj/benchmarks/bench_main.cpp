#include <benchmark/benchmark.h>

#include "rigid1d/certify.hpp"
#include "rigid1d/embedding.hpp"
#include "rigid1d/enumerate.hpp"
#include "rigid1d/explore.hpp"
#include "rigid1d/generators.hpp"
#include "rigid1d/reconstruct.hpp"
#include "rigid1d/rng.hpp"

using namespace rigid1d;

static void BM_GnpSparse(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(gen_gnp(n, 1.1 / n, ++seed));
}
BENCHMARK(BM_GnpSparse)->Arg(10000)->Arg(100000);

static void BM_ProcessToMinDegree(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_process_to_min_degree(n, 2, ++seed).tau);
}
BENCHMARK(BM_ProcessToMinDegree)->Arg(200)->Arg(1000);

static void BM_Oracle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(1);
  std::vector<Graph> graphs;
  while (graphs.size() < 64) {
    Graph g = gen_gnp(n, 0.5, rng.next());
    if (g.size() <= 24) graphs.push_back(std::move(g));
  }
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(decide_global_rigidity(graphs[i++ % graphs.size()]).status);
}
BENCHMARK(BM_Oracle)->Arg(6)->Arg(7)->Arg(8);

static void BM_CubicEnumeration(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_regular_graphs(8, 3).size());
}
BENCHMARK(BM_CubicEnumeration)->Unit(benchmark::kMillisecond);

static void BM_ReconstructHittingTime(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto trace = run_process_to_min_degree(n, 2, 5);
  const Graph g = trace.prefix(trace.tau);
  Rng rng(6);
  const auto battery = adversarial_battery(n, 20, rng);
  std::vector<EdgeLengths> lengths;
  for (const auto& f : battery) lengths.push_back(lengths_of(g, f));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct(g, lengths[i++ % lengths.size()]).classes.size());
}
BENCHMARK(BM_ReconstructHittingTime)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_ExploreSparse(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Graph g = gen_gnp(n, 1.1 / n, 7);
  const auto params = ExploreParams::defaults(n);
  Explorer explorer(g);
  Vertex v = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(explorer.run(v, params).rounds);
    v = (v + 7919) % n;
  }
}
BENCHMARK(BM_ExploreSparse)->Arg(10000)->Arg(100000);

static void BM_MatchingCutExact(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(8);
  std::vector<Graph> graphs;
  for (int i = 0; i < 32; ++i) graphs.push_back(gen_gnp(n, 0.3, rng.next()));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(find_matching_cut(graphs[i++ % graphs.size()]).cut.has_value());
}
BENCHMARK(BM_MatchingCutExact)->Arg(12)->Arg(20);

static void BM_CrossPropertyExact(benchmark::State& state) {
  const Graph g = gen_gnp(30, 0.9, 9);
  for (auto _ : state) benchmark::DoNotOptimize(check_cross_property(g, 3).has_value());
}
BENCHMARK(BM_CrossPropertyExact)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
