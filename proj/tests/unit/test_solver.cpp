#include "coarsepw/decomp.hpp"
#include "coarsepw/error.hpp"
#include "coarsepw/generators.hpp"
#include "coarsepw/oracle.hpp"
#include "coarsepw/solver.hpp"
#include "corpus.hpp"
#include "doctest.h"

using namespace coarsepw;

namespace {

PartitionDecomposition singleton_path(const Graph& g, Distance rho) {
  std::vector<VertexSet> bags;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    bags.push_back({static_cast<Vertex>(v)});
    if (v > 0) edges.emplace_back(v - 1, v);
  }
  return make_decomposition(g, rho, std::move(bags), std::move(edges));
}

Graph complete(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return Graph(n, edges);
}

void check_against_oracles(const Graph& g, const RootedDecomposition& rd) {
  const Distance rho = rd.pd.rho;
  const auto all = testing::all_vertices(g);
  const auto is = solve_dist_is(g, rd);
  const auto ds = solve_dist_ds(g, rd);
  CHECK(is.value == oracle::brute_dist_is(g, all, 2 * rho));
  CHECK(ds.value == oracle::brute_dist_ds(g, all, rho));
  CHECK(is.witness.size() == static_cast<std::size_t>(is.value));
  CHECK(ds.witness.size() == static_cast<std::size_t>(ds.value));
  CHECK(testing::is_distance_independent(g, is.witness, 2 * rho));
  CHECK(testing::dominates_all(g, ds.witness, rho));
}

}  // namespace

TEST_CASE("IS states of a singleton bag in P5") {
  const auto g = make_path(5).graph;
  const RootedDecomposition rd(g, singleton_path(g, 1));
  const auto family = enumerate_states(g, rd, 2, SolverMode::is, 1, 2);
  CHECK(family.ground == VertexSet{1, 2, 3});
  CHECK(family.states == std::vector<VertexSet>{{}, {1}, {2}, {3}});
}

TEST_CASE("DS states dominate the bag") {
  const auto g = make_path(5).graph;
  const RootedDecomposition rd(g, singleton_path(g, 1));
  const auto family = enumerate_states(g, rd, 2, SolverMode::ds, 1, 2);
  CHECK_FALSE(family.states.empty());
  for (const auto& s : family.states) {
    CHECK_FALSE(s.empty());
    CHECK(std::any_of(s.begin(), s.end(), [](Vertex v) { return v >= 1 && v <= 3; }));
  }
  CHECK(family.states.front() == VertexSet{1});
}

TEST_CASE("an empty bag has only the empty state") {
  const auto g = make_path(3).graph;
  const RootedDecomposition rd(g, make_decomposition(g, 1, {{0, 1, 2}, {}}, {{0, 1}}));
  CHECK(enumerate_states(g, rd, 1, SolverMode::is, 1, 1).states == std::vector<VertexSet>{{}});
  CHECK(enumerate_states(g, rd, 1, SolverMode::ds, 1, 1).states == std::vector<VertexSet>{{}});
  CHECK(solve_dist_is(g, rd).value == 1);
  CHECK(solve_dist_ds(g, rd).value == 1);
}

TEST_CASE("state enumeration respects the budget") {
  const auto g = make_path(12).graph;
  const RootedDecomposition rd(g, make_decomposition(g, 1, {testing::all_vertices(g)}, {}));
  StateBudget tiny;
  tiny.max_states_per_node = 10;
  CHECK_THROWS_WITH_AS(enumerate_states(g, rd, 0, SolverMode::is, 4, 0, tiny), doctest::Contains("more than 10"),
                       BudgetExceeded);
  CHECK_THROWS_AS(solve_dist_is(g, rd, tiny), BudgetExceeded);
}

TEST_CASE("compatibility on P7 with three bags") {
  const auto g = make_path(7).graph;
  const RootedDecomposition rd(g, make_decomposition(g, 1, {{0, 1}, {2, 3, 4}, {5, 6}}, {{0, 1}, {1, 2}}));
  CHECK(compatible(g, rd, 0, {1}, 1, {1}, SolverMode::is));
  CHECK(compatible(g, rd, 0, {1}, 1, {1, 4}, SolverMode::is));
  CHECK_FALSE(compatible(g, rd, 0, {1}, 1, {2}, SolverMode::ds));
  CHECK_FALSE(compatible(g, rd, 0, {0}, 1, {2, 5}, SolverMode::ds));
  CHECK(compatible(g, rd, 0, {1}, 1, {1, 3}, SolverMode::ds));
  CHECK_FALSE(compatible(g, rd, 0, {1}, 1, {1, 3}, SolverMode::is));
}

TEST_CASE("solver examples") {
  const auto p5 = make_path(5).graph;
  const RootedDecomposition rd5(p5, singleton_path(p5, 1));
  const auto is5 = solve_dist_is(p5, rd5);
  CHECK(is5.value == 2);
  CHECK(testing::is_distance_independent(p5, is5.witness, 2));
  const auto ds5 = solve_dist_ds(p5, rd5);
  CHECK(ds5.value == 2);
  CHECK(testing::dominates_all(p5, ds5.witness, 1));

  const auto single = make_path(1).graph;
  const RootedDecomposition rd1(single, singleton_path(single, 1));
  CHECK(solve_dist_is(single, rd1).value == 1);
  CHECK(solve_dist_ds(single, rd1).value == 1);

  const auto k6 = complete(6);
  const RootedDecomposition rdk(k6, make_decomposition(k6, 1, {testing::all_vertices(k6)}, {}));
  CHECK(solve_dist_ds(k6, rdk).value == 1);
  CHECK(solve_dist_is(k6, rdk).value == 1);

  const auto c12 = make_cycle(12);
  const RootedDecomposition rd12(c12.graph, build_path_partition(c12.graph, c12.cover));
  CHECK(rd12.pd.rho == 1);
  CHECK(solve_dist_is(c12.graph, rd12).value == 4);
  CHECK(solve_dist_ds(c12.graph, rd12).value == 4);
}

TEST_CASE("leaf tables are zero") {
  const auto g = make_grid(4, 4).graph;
  std::mt19937_64 rng(4);
  const RootedDecomposition rd(g, testing::random_layered_decomposition(g, 1, rng, true));
  for (auto mode : {SolverMode::is, SolverMode::ds}) {
    const auto tables = solve_tables(g, rd, mode);
    for (std::size_t x = 0; x < rd.pd.nodes; ++x) {
      if (!rd.children[x].empty()) continue;
      for (auto value : tables.values[x]) CHECK(value == 0);
    }
  }
}

TEST_CASE("invalid decompositions are rejected") {
  const auto g = make_path(7).graph;
  CHECK_THROWS_AS(RootedDecomposition(g, make_decomposition(g, 1, {{0, 1}, {2, 3}, {4, 5, 6}}, {{0, 2}, {2, 1}})),
                  InvalidArgument);
  CHECK_THROWS_AS(RootedDecomposition(g, singleton_path(g, 1), 9), InvalidArgument);
}

TEST_CASE("solvers match the oracles on random decompositions") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 4 + rng() % 13;
    Graph g;
    switch (trial % 4) {
      case 0: g = make_path(n).graph; break;
      case 1: g = make_cycle(std::max<std::size_t>(n, 3)).graph; break;
      case 2: g = testing::random_tree(n, rng); break;
      default: g = testing::random_connected(n, 1 + rng() % 3, rng); break;
    }
    const auto rho = static_cast<Distance>(1 + rng() % 2);
    const bool branch = rng() % 2;
    CAPTURE(trial);
    const RootedDecomposition rd(g, testing::random_layered_decomposition(g, rho, rng, branch));
    check_against_oracles(g, rd);
  }
}

TEST_CASE("the root choice does not change the optimum") {
  std::mt19937_64 rng(77);
  const auto g = testing::random_tree(14, rng);
  const auto pd = testing::random_layered_decomposition(g, 1, rng, true);
  const RootedDecomposition first(g, pd, 0);
  const RootedDecomposition last(g, pd, pd.nodes - 1);
  CHECK(solve_dist_is(g, first).value == solve_dist_is(g, last).value);
  CHECK(solve_dist_ds(g, first).value == solve_dist_ds(g, last).value);
}

TEST_CASE("dominating-set projections agree with the full tables") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = testing::random_connected(5 + rng() % 8, rng() % 3, rng);
    const RootedDecomposition rd(g, testing::random_layered_decomposition(g, 1, rng, trial % 2 == 0));
    const auto tables = solve_tables(g, rd, SolverMode::ds);
    std::int64_t best = kInfeasibleMin;
    const auto& root_states = tables.families[rd.root].states;
    for (std::size_t i = 0; i < root_states.size(); ++i) {
      if (tables.values[rd.root][i] == kInfeasibleMin) continue;
      const auto candidate = static_cast<std::int64_t>(root_states[i].size()) + tables.values[rd.root][i];
      if (best == kInfeasibleMin || candidate < best) best = candidate;
    }
    CAPTURE(trial);
    CHECK(solve_dist_ds(g, rd).value == best);
  }
}

TEST_CASE("dominating-set budget counts distinct projections") {
  const auto g = make_grid(4, 4).graph;
  std::mt19937_64 rng(9);
  const RootedDecomposition rd(g, testing::random_layered_decomposition(g, 1, rng, false));
  StateBudget tiny;
  tiny.max_states_per_node = 1;
  CHECK_THROWS_AS(solve_dist_ds(g, rd, tiny), BudgetExceeded);
}
