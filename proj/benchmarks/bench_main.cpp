#include <benchmark/benchmark.h>

#include <numeric>

#include "rsham/absorbing.hpp"
#include "rsham/connecting.hpp"
#include "rsham/generators.hpp"
#include "rsham/oracle.hpp"
#include "rsham/pathcover.hpp"
#include "rsham/pipeline.hpp"
#include "rsham/random.hpp"
#include "rsham/reservoir.hpp"
#include "rsham/verify.hpp"

using namespace rsham;

static void BM_VerifyCycle(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Digraph k = complete_digraph(n);
  VertexSeq c(n);
  std::iota(c.begin(), c.end(), 0);
  for (auto _ : state) benchmark::DoNotOptimize(is_rs_cycle(k, c));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_VerifyCycle)->Arg(100)->Arg(1000);

static void BM_OutCascade(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Digraph d = gen_random_semidegree(n, 0.77, 1);
  const auto arcs = d.arcs();
  Rng rng(2);
  ConnectParams p;
  for (auto _ : state) {
    auto c = build_out_cascade(d, arcs[rng.below(arcs.size())], p);
    benchmark::DoNotOptimize(c.heavy_level());
  }
}
BENCHMARK(BM_OutCascade)->Arg(200)->Arg(500);

static void BM_Connect(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Digraph d = gen_random_semidegree(n, 0.77, 3);
  const auto arcs = d.arcs();
  Rng rng(4);
  ConnectParams p;
  const VertexSet none(n);
  for (auto _ : state) {
    ArcPair ab = arcs[rng.below(arcs.size())], cd = ab;
    while (cd.tail == ab.tail || cd.tail == ab.head || cd.head == ab.tail ||
           cd.head == ab.head)
      cd = arcs[rng.below(arcs.size())];
    benchmark::DoNotOptimize(try_connect(d, ab, cd, none, p).path);
  }
}
BENCHMARK(BM_Connect)->Arg(200)->Arg(500);

static void BM_AbsorberCount(benchmark::State& state) {
  Digraph d = gen_random_semidegree(30, 0.75, 5);
  Vertex v = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bf_count_absorbers(d, v));
    v = (v + 1) % 30;
  }
}
BENCHMARK(BM_AbsorberCount)->Unit(benchmark::kMillisecond);

static void BM_ReservoirCheck(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Digraph d = gen_random_semidegree(n, 0.77, 6);
  auto r = sample_reservoir_best_effort(d, VertexSet(n), n / 20, 0.1, 7, 0);
  for (auto _ : state) benchmark::DoNotOptimize(check_reservoir(d, r.verts, 0.1).holds);
}
BENCHMARK(BM_ReservoirCheck)->Arg(500)->Arg(2000);

static void BM_PathCover(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Digraph d = gen_random_semidegree(n, 0.8, 8);
  std::uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(greedy_path_cover(d, n, n, ++seed).paths.size());
}
BENCHMARK(BM_PathCover)->Arg(300)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_Pipeline(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Digraph d = gen_random_semidegree(n, 0.8, 9);
  PipelineConfig cfg;
  for (auto _ : state) {
    ++cfg.seed;
    benchmark::DoNotOptimize(find_rs_hamiltonian(d, cfg).report.success);
  }
}
BENCHMARK(BM_Pipeline)->Arg(120)->Arg(300)->Arg(600)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
