#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "coarsepw/graph.hpp"
#include "coarsepw/metric.hpp"
#include "coarsepw/report.hpp"

namespace coarsepw {

/// Ordered family of geodesics such that every vertex is within `rho` of one of them.
struct GeodesicCover {
  Distance rho = 0;
  std::vector<Walk> paths;

  std::size_t k() const { return paths.size(); }
  friend bool operator==(const GeodesicCover&, const GeodesicCover&) = default;
};

struct CoverReport : Report {
  std::vector<std::size_t> non_geodesic_paths;
  VertexSet uncovered;
};

/// Checks that every path is a geodesic and every vertex is within rho of the family.
/// Throws InvalidArgument when a path is not embedded in g.
CoverReport verify_cover(const Graph& g, const GeodesicCover& cover);

/// Deterministic double-sweep greedy construction; always returns a valid cover.
GeodesicCover greedy_cover(const Graph& g, Distance rho);

struct CoverSearchBudget {
  std::size_t max_candidate_paths = 200000;
  std::size_t max_nodes_expanded = 5000000;
};

/// Minimum-size cover with at most kmax geodesics, or nullopt when none exists.
/// Throws BudgetExceeded when the search space exceeds the budget.
std::optional<GeodesicCover> min_cover_exhaustive(const Graph& g, Distance rho, std::size_t kmax,
                                                  const CoverSearchBudget& budget = {});

}  // namespace coarsepw
