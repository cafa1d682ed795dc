#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace coarsepw {

using Vertex = std::int32_t;
using Distance = std::int32_t;
/// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<Vertex>;

inline constexpr Distance kUnreachable = std::numeric_limits<Distance>::max();

/// Immutable undirected simple graph on vertices 0..n-1 with sorted adjacency.
class Graph {
 public:
  Graph() = default;
  /// Throws InvalidArgument on self-loops, duplicate edges or out-of-range ids.
  Graph(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges);

  std::size_t vertex_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[static_cast<std::size_t>(v)]; }
  std::size_t degree(Vertex v) const { return adjacency_[static_cast<std::size_t>(v)].size(); }
  bool contains(Vertex v) const { return v >= 0 && static_cast<std::size_t>(v) < adjacency_.size(); }
  bool has_edge(Vertex u, Vertex v) const;
  std::size_t max_degree() const;

  /// Edges with u < v in ascending order.
  std::vector<std::pair<Vertex, Vertex>> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<Vertex>> adjacency_;
  std::size_t edge_count_ = 0;
};

}  // namespace coarsepw
