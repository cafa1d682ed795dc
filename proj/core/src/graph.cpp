#include "coarsepw/graph.hpp"

#include <algorithm>
#include <string>

#include "coarsepw/error.hpp"

namespace coarsepw {

Graph::Graph(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges) : adjacency_(n) {
  for (const auto& [u, v] : edges) {
    if (!contains(u) || !contains(v)) {
      throw InvalidArgument("edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
    }
    if (u == v) throw InvalidArgument("self-loop on vertex " + std::to_string(u));
    adjacency_[static_cast<std::size_t>(u)].push_back(v);
    adjacency_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (std::size_t v = 0; v < n; ++v) {
    auto& list = adjacency_[v];
    std::sort(list.begin(), list.end());
    auto dup = std::adjacent_find(list.begin(), list.end());
    if (dup != list.end()) {
      throw InvalidArgument("duplicate edge (" + std::to_string(v) + "," + std::to_string(*dup) + ")");
    }
  }
  edge_count_ = edges.size();
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (!contains(u) || !contains(v)) return false;
  auto list = neighbors(u);
  return std::binary_search(list.begin(), list.end(), v);
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (const auto& list : adjacency_) best = std::max(best, list.size());
  return best;
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(edge_count_);
  for (std::size_t u = 0; u < adjacency_.size(); ++u) {
    for (Vertex v : adjacency_[u]) {
      if (static_cast<Vertex>(u) < v) out.emplace_back(static_cast<Vertex>(u), v);
    }
  }
  return out;
}

}  // namespace coarsepw
