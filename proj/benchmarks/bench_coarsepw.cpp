#include <benchmark/benchmark.h>

#include "coarsepw/decomp.hpp"
#include "coarsepw/generators.hpp"
#include "coarsepw/metric.hpp"
#include "coarsepw/qiso.hpp"
#include "coarsepw/snappath.hpp"
#include "coarsepw/solver.hpp"

namespace {

using namespace coarsepw;

Instance union_instance(benchmark::State& state) {
  return make_random_cover_union(3, static_cast<std::size_t>(state.range(0)), 1, 7);
}

void bm_bfs(benchmark::State& state) {
  const auto g = make_grid(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(0))).graph;
  for (auto _ : state) benchmark::DoNotOptimize(bfs(g, Vertex{0}));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.vertex_count()));
}
BENCHMARK(bm_bfs)->Arg(32)->Arg(128)->Arg(512);

void bm_snap(benchmark::State& state) {
  const auto inst = union_instance(state);
  const Snapper snapper(inst.graph, inst.cover);
  const auto tree = shortest_path_tree(inst.graph, 0);
  const auto last = static_cast<Vertex>(inst.graph.vertex_count() - 1);
  const auto path = tree.path_to(last);
  for (auto _ : state) benchmark::DoNotOptimize(simplify(snapper.snap(path), inst.cover.k(), inst.cover.rho));
}
BENCHMARK(bm_snap)->Arg(20)->Arg(80)->Arg(320);

void bm_cover_sphere(benchmark::State& state) {
  const auto inst = union_instance(state);
  for (auto _ : state) benchmark::DoNotOptimize(cover_sphere(inst.graph, inst.cover, 0, 4));
}
BENCHMARK(bm_cover_sphere)->Arg(20)->Arg(80);

void bm_build_path_partition(benchmark::State& state) {
  const auto inst = union_instance(state);
  for (auto _ : state) benchmark::DoNotOptimize(build_path_partition(inst.graph, inst.cover));
}
BENCHMARK(bm_build_path_partition)->Arg(20)->Arg(80)->Arg(320);

void bm_distance_graph(benchmark::State& state) {
  const auto g = make_grid(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(0))).graph;
  for (auto _ : state) benchmark::DoNotOptimize(build_distance_graph(g, 4));
}
BENCHMARK(bm_distance_graph)->Arg(16)->Arg(64);

template <bool Independent>
void bm_solve(benchmark::State& state) {
  const auto inst = make_path(static_cast<std::size_t>(state.range(0)));
  const RootedDecomposition rd(inst.graph, build_path_partition(inst.graph, inst.cover));
  for (auto _ : state) {
    if constexpr (Independent) {
      benchmark::DoNotOptimize(solve_dist_is(inst.graph, rd));
    } else {
      benchmark::DoNotOptimize(solve_dist_ds(inst.graph, rd));
    }
  }
}
BENCHMARK(bm_solve<true>)->Name("bm_solve_is")->Arg(16)->Arg(64)->Arg(256);
BENCHMARK(bm_solve<false>)->Name("bm_solve_ds")->Arg(16)->Arg(64)->Arg(256);

}  // namespace
BENCHMARK_MAIN();
