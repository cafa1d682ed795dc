#include "coarsepw/cover.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <string>

#include "coarsepw/error.hpp"
#include "coarsepw/oracle.hpp"

namespace coarsepw {
namespace {

std::vector<Vertex> cover_vertices(const GeodesicCover& cover) {
  std::vector<Vertex> out;
  for (const auto& p : cover.paths) out.insert(out.end(), p.vertices.begin(), p.vertices.end());
  return out;
}

std::vector<Distance> distance_to_cover(const Graph& g, const GeodesicCover& cover) {
  const auto sources = cover_vertices(cover);
  if (sources.empty()) return std::vector<Distance>(g.vertex_count(), kUnreachable);
  return bfs(g, sources).dist;
}

// Lowest id among the maximizers of dist over the vertices accepted by `eligible`.
template <typename Pred>
Vertex farthest(const std::vector<Distance>& dist, Pred eligible) {
  Vertex best = -1;
  for (std::size_t v = 0; v < dist.size(); ++v) {
    if (!eligible(static_cast<Vertex>(v))) continue;
    if (best == -1 || dist[v] > dist[static_cast<std::size_t>(best)]) best = static_cast<Vertex>(v);
  }
  return best;
}

}  // namespace

CoverReport verify_cover(const Graph& g, const GeodesicCover& cover) {
  CoverReport report;
  for (std::size_t i = 0; i < cover.paths.size(); ++i) {
    if (!is_walk_in(g, cover.paths[i])) {
      throw InvalidArgument("cover path " + std::to_string(i) + " is not a walk in the graph");
    }
    if (!is_geodesic(g, cover.paths[i])) {
      report.non_geodesic_paths.push_back(i);
      report.add("path " + std::to_string(i) + " is not a geodesic");
    }
  }
  const auto dist = distance_to_cover(g, cover);
  for (std::size_t v = 0; v < dist.size(); ++v) {
    if (dist[v] == kUnreachable || dist[v] > cover.rho) {
      report.uncovered.push_back(static_cast<Vertex>(v));
      report.add("vertex " + std::to_string(v) + " is farther than " + std::to_string(cover.rho) +
                 " from every path");
    }
  }
  return report;
}

GeodesicCover greedy_cover(const Graph& g, Distance rho) {
  if (rho < 0) throw InvalidArgument("rho must be non-negative");
  GeodesicCover cover{rho, {}};
  for (;;) {
    const auto coverage = distance_to_cover(g, cover);
    auto uncovered = [&](Vertex v) {
      const Distance d = coverage[static_cast<std::size_t>(v)];
      return d == kUnreachable || d > rho;
    };
    const Vertex s = farthest(coverage, uncovered);
    if (s == -1) break;
    const auto from_s = bfs(g, s);
    const Vertex a = farthest(from_s.dist, [&](Vertex v) { return uncovered(v) && from_s.reachable(v); });
    const auto from_a = bfs(g, a);
    const Vertex b = farthest(from_a.dist, [&](Vertex v) { return uncovered(v) && from_a.reachable(v); });
    cover.paths.push_back(shortest_path(g, a, b));
  }
  return cover;
}

std::optional<GeodesicCover> min_cover_exhaustive(const Graph& g, Distance rho, std::size_t kmax,
                                                  const CoverSearchBudget& budget) {
  using Mask = std::uint64_t;
  const std::size_t n = g.vertex_count();
  if (n > 64) throw BudgetExceeded("exhaustive cover search supports at most 64 vertices");
  if (n == 0) return GeodesicCover{rho, {}};
  const Mask all = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;

  // One representative geodesic per coverage mask, first in (u, v, lexicographic) order.
  std::map<Mask, Walk> by_mask;
  std::size_t candidates = 0;
  for (Vertex u = 0; static_cast<std::size_t>(u) < n; ++u) {
    for (Vertex v = u; static_cast<std::size_t>(v) < n; ++v) {
      const std::size_t room = budget.max_candidate_paths - candidates;
      std::vector<Walk> paths;
      try {
        paths = oracle::brute_all_shortest_paths(g, u, v, room);
      } catch (const BudgetExceeded&) {
        throw BudgetExceeded("exhaustive cover search: more than " + std::to_string(budget.max_candidate_paths) +
                             " candidate geodesics");
      }
      candidates += paths.size();
      for (auto& p : paths) {
        const auto field = bfs_bounded(g, p.vertices, rho);
        Mask mask = 0;
        for (std::size_t w = 0; w < n; ++w) {
          if (field.dist[w] != kUnreachable) mask |= Mask{1} << w;
        }
        by_mask.try_emplace(mask, std::move(p));
      }
    }
  }

  std::vector<std::pair<Mask, const Walk*>> sets;
  for (const auto& [mask, walk] : by_mask) {
    const bool dominated = std::any_of(by_mask.begin(), by_mask.end(), [&](const auto& other) {
      return other.first != mask && (mask & ~other.first) == 0;
    });
    if (!dominated) sets.emplace_back(mask, &walk);
  }

  std::size_t nodes = 0;
  std::vector<const Walk*> chosen;
  auto search = [&](auto&& self, Mask uncovered, std::size_t left) -> bool {
    if (uncovered == 0) return true;
    if (left == 0) return false;
    if (++nodes > budget.max_nodes_expanded) {
      throw BudgetExceeded("exhaustive cover search expanded more than " +
                           std::to_string(budget.max_nodes_expanded) + " nodes");
    }
    const Mask first = uncovered & (~uncovered + 1);
    for (const auto& [mask, walk] : sets) {
      if ((mask & first) == 0) continue;
      chosen.push_back(walk);
      if (self(self, uncovered & ~mask, left - 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  for (std::size_t k = 1; k <= kmax; ++k) {
    chosen.clear();
    if (search(search, all, k)) {
      GeodesicCover cover{rho, {}};
      for (const Walk* w : chosen) cover.paths.push_back(*w);
      return cover;
    }
  }
  return std::nullopt;
}

}  // namespace coarsepw
