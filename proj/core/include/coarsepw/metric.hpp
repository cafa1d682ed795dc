#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "coarsepw/graph.hpp"

namespace coarsepw {

/// Hop distances from the nearest of a set of sources; kUnreachable elsewhere.
struct DistanceField {
  VertexSet sources;
  std::vector<Distance> dist;

  Distance operator[](Vertex v) const { return dist[static_cast<std::size_t>(v)]; }
  bool reachable(Vertex v) const { return (*this)[v] != kUnreachable; }
};

/// Multi-source BFS. Throws InvalidArgument on an empty or out-of-range source set.
DistanceField bfs(const Graph& g, std::span<const Vertex> sources);
DistanceField bfs(const Graph& g, Vertex source);

/// BFS that stops expanding at depth `limit`; vertices farther away stay kUnreachable.
DistanceField bfs_bounded(const Graph& g, std::span<const Vertex> sources, Distance limit);

Distance distance(const Graph& g, Vertex u, Vertex v);

VertexSet ball(const Graph& g, Vertex v, Distance radius);
VertexSet sphere(const Graph& g, Vertex u, Distance d);

/// {v : dist(v, sources) <= radius}, sorted.
VertexSet vicinity(const Graph& g, std::span<const Vertex> sources, Distance radius);

/// Connected components, each sorted, ordered by their lowest vertex.
std::vector<VertexSet> connected_components(const Graph& g);

/// Non-empty vertex sequence; consecutive vertices must be adjacent in the host graph.
struct Walk {
  std::vector<Vertex> vertices;

  Walk() = default;
  explicit Walk(std::vector<Vertex> vs) : vertices(std::move(vs)) {}
  static Walk single(Vertex v) { return Walk({v}); }

  std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }
  Vertex start() const { return vertices.front(); }
  Vertex end() const { return vertices.back(); }
  bool empty() const { return vertices.empty(); }
  /// Pairwise-distinct vertices.
  bool is_path() const;
  Walk reversed() const;
  /// Inclusive slice [from, to] of positions; reversed when from > to.
  Walk slice(std::size_t from, std::size_t to) const;

  friend bool operator==(const Walk&, const Walk&) = default;
};

/// P · Q; throws InvalidArgument when end(P) != start(Q).
Walk concatenate(const Walk& a, const Walk& b);

bool is_walk_in(const Graph& g, const Walk& w);

/// Throws InvalidArgument when the walk is not embedded in g.
bool is_geodesic(const Graph& g, const Walk& w);
bool is_almost_shortest(const Graph& g, const Walk& w, Distance gamma);

/// Lexicographically smallest shortest from-to path. Throws when unreachable.
Walk shortest_path(const Graph& g, Vertex from, Vertex to);

/// BFS tree from root whose parent pointers pick the smallest-id neighbor one layer closer.
struct ShortestPathTree {
  Vertex root = 0;
  std::vector<Distance> dist;
  std::vector<Vertex> parent;  // -1 at the root and at unreachable vertices

  /// root-to-v path along parent pointers.
  Walk path_to(Vertex v) const;
};

ShortestPathTree shortest_path_tree(const Graph& g, Vertex root);

}  // namespace coarsepw
