#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "coarsepw/decomp.hpp"
#include "coarsepw/graph.hpp"

namespace coarsepw {

/// A tree-partition-decomposition rooted at `root`; the solvers use the decomposition's rho.
struct RootedDecomposition {
  PartitionDecomposition pd;
  std::size_t root = 0;
  std::vector<std::int64_t> parent;  // -1 at the root
  std::vector<std::vector<std::size_t>> children;
  std::vector<std::size_t> post_order;
  std::vector<std::size_t> node_of;

  /// Throws InvalidArgument unless pd passes validate_decomposition.
  RootedDecomposition(const Graph& g, PartitionDecomposition decomposition, std::size_t root_node = 0);
};

enum class SolverMode { is, ds };

struct StateBudget {
  std::size_t max_states_per_node = 2'000'000;
  std::size_t max_nodes_expanded = 50'000'000;
};

/// Candidate sets for one node, in canonical order (lexicographic DFS over the sorted ground set).
struct StateFamily {
  SolverMode mode = SolverMode::is;
  std::size_t node = 0;
  VertexSet ground;  // rho-vicinity of C_x
  std::size_t cap = 0;
  std::vector<VertexSet> states;
};

/// IS: distance-2rho independent subsets of the ground set with at most (delta + 1) k members.
/// DS: subsets with at most k (delta^2 + 1) members that rho-dominate C_x.
/// Throws BudgetExceeded when the family outgrows the budget.
StateFamily enumerate_states(const Graph& g, const RootedDecomposition& rd, std::size_t x, SolverMode mode,
                             std::size_t k, std::size_t delta, const StateBudget& budget = {});

/// B[x] = A ∩ B = A[y], plus distance-2rho independence of A ∪ B in IS mode. y must be a child of x.
bool compatible(const Graph& g, const RootedDecomposition& rd, std::size_t x, const VertexSet& a, std::size_t y,
                const VertexSet& b, SolverMode mode);

inline constexpr std::int64_t kInfeasibleMax = std::numeric_limits<std::int64_t>::min();
inline constexpr std::int64_t kInfeasibleMin = std::numeric_limits<std::int64_t>::max();

struct DpTables {
  SolverMode mode = SolverMode::is;
  std::size_t k = 0;
  std::size_t delta = 0;
  std::vector<StateFamily> families;
  /// values[x][i] is Phi_x (IS) or Psi_x (DS) of families[x].states[i].
  std::vector<std::vector<std::int64_t>> values;
  /// choice[x][i][c] is the chosen state index of children[x][c].
  std::vector<std::vector<std::vector<std::size_t>>> choice;
};

struct SolveResult {
  std::int64_t value = 0;
  VertexSet witness;
  std::size_t total_states = 0;
};

/// Fills every table bottom-up. Caps use k = max certificate size (at least 1) and delta = tree degree.
DpTables solve_tables(const Graph& g, const RootedDecomposition& rd, SolverMode mode, const StateBudget& budget = {});

/// Maximum distance-2rho independent set of G, rho = rd.pd.rho.
SolveResult solve_dist_is(const Graph& g, const RootedDecomposition& rd, const StateBudget& budget = {});
/// Minimum distance-rho dominating set of G, rho = rd.pd.rho.
/// Streams each node's states and keeps only the best per projection onto the parent's vicinity, so
/// max_states_per_node bounds distinct projections rather than stored states.
SolveResult solve_dist_ds(const Graph& g, const RootedDecomposition& rd, const StateBudget& budget = {});

}  // namespace coarsepw
