#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "coarsepw/graph.hpp"
#include "coarsepw/metric.hpp"

// Brute-force reference implementations. Nothing here shares code with the
// decomposition or dynamic-programming pipeline beyond BFS.
namespace coarsepw::oracle {

struct Budget {
  std::size_t max_subset_size = 24;
  std::size_t max_nodes_expanded = 50'000'000;
};

/// Maximum distance-`two_rho` independent subset of `targets` (pairwise distance > two_rho).
/// Branch and bound on the conflict graph; at most 64 targets.
int brute_dist_is(const Graph& g, std::span<const Vertex> targets, Distance two_rho, const Budget& budget = {});

/// Minimum number of radius-`rho` balls (centers anywhere in g) covering `targets`.
/// Iterative deepening over the answer size; at most 64 targets.
int brute_dist_ds(const Graph& g, std::span<const Vertex> targets, Distance rho, const Budget& budget = {});

/// Every shortest u-v path, in lexicographic order. Throws BudgetExceeded beyond `cap` paths.
std::vector<Walk> brute_all_shortest_paths(const Graph& g, Vertex u, Vertex v, std::size_t cap);

}  // namespace coarsepw::oracle
