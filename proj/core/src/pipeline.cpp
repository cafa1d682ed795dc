#include "coarsepw/pipeline.hpp"

namespace coarsepw {

PipelineResult pipeline(const Graph& g, const GeodesicCover& cover, const StateBudget& budget) {
  PipelineResult out;
  out.decomposition = build_path_partition(g, cover);
  out.solver_rho = out.decomposition.rho;
  const RootedDecomposition rd(g, out.decomposition);
  out.independent = solve_dist_is(g, rd, budget);
  out.dominating = solve_dist_ds(g, rd, budget);
  return out;
}

}  // namespace coarsepw
