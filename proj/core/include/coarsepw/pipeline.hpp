#pragma once

#include "coarsepw/cover.hpp"
#include "coarsepw/decomp.hpp"
#include "coarsepw/graph.hpp"
#include "coarsepw/solver.hpp"

namespace coarsepw {

struct PipelineResult {
  PartitionDecomposition decomposition;
  /// Solver radius: the decomposition's rho, i.e. max(2 rho, 1).
  Distance solver_rho = 0;
  SolveResult independent;  // distance 2 * solver_rho
  SolveResult dominating;   // distance solver_rho
};

/// Decomposes g along the cover and runs both dynamic programs on the resulting path.
PipelineResult pipeline(const Graph& g, const GeodesicCover& cover, const StateBudget& budget = {});

}  // namespace coarsepw
