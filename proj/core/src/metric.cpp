#include "coarsepw/metric.hpp"

#include <algorithm>
#include <string>

#include "coarsepw/error.hpp"

namespace coarsepw {
namespace {

void check_vertex(const Graph& g, Vertex v) {
  if (!g.contains(v)) throw InvalidArgument("vertex " + std::to_string(v) + " out of range");
}

}  // namespace

DistanceField bfs_bounded(const Graph& g, std::span<const Vertex> sources, Distance limit) {
  if (sources.empty()) throw InvalidArgument("bfs requires at least one source");
  DistanceField field;
  field.sources.assign(sources.begin(), sources.end());
  std::sort(field.sources.begin(), field.sources.end());
  field.sources.erase(std::unique(field.sources.begin(), field.sources.end()), field.sources.end());
  field.dist.assign(g.vertex_count(), kUnreachable);

  std::vector<Vertex> queue;
  queue.reserve(g.vertex_count());
  for (Vertex s : field.sources) {
    check_vertex(g, s);
    field.dist[static_cast<std::size_t>(s)] = 0;
    queue.push_back(s);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex v = queue[head];
    const Distance dv = field.dist[static_cast<std::size_t>(v)];
    if (dv >= limit) continue;
    for (Vertex w : g.neighbors(v)) {
      auto& dw = field.dist[static_cast<std::size_t>(w)];
      if (dw == kUnreachable) {
        dw = dv + 1;
        queue.push_back(w);
      }
    }
  }
  return field;
}

DistanceField bfs(const Graph& g, std::span<const Vertex> sources) {
  return bfs_bounded(g, sources, kUnreachable);
}

DistanceField bfs(const Graph& g, Vertex source) {
  return bfs(g, std::span<const Vertex>(&source, 1));
}

Distance distance(const Graph& g, Vertex u, Vertex v) {
  check_vertex(g, v);
  return bfs(g, u)[v];
}

VertexSet vicinity(const Graph& g, std::span<const Vertex> sources, Distance radius) {
  VertexSet out;
  if (sources.empty()) return out;
  const auto field = bfs_bounded(g, sources, radius);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (field.dist[v] != kUnreachable) out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

VertexSet ball(const Graph& g, Vertex v, Distance radius) {
  return vicinity(g, std::span<const Vertex>(&v, 1), radius);
}

VertexSet sphere(const Graph& g, Vertex u, Distance d) {
  const auto field = bfs_bounded(g, std::span<const Vertex>(&u, 1), d);
  VertexSet out;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (field.dist[v] == d) out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

std::vector<VertexSet> connected_components(const Graph& g) {
  std::vector<VertexSet> out;
  std::vector<bool> seen(g.vertex_count(), false);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (seen[v]) continue;
    const auto field = bfs(g, static_cast<Vertex>(v));
    VertexSet component;
    for (std::size_t w = 0; w < g.vertex_count(); ++w) {
      if (field.dist[w] != kUnreachable) {
        seen[w] = true;
        component.push_back(static_cast<Vertex>(w));
      }
    }
    out.push_back(std::move(component));
  }
  return out;
}

bool Walk::is_path() const {
  std::vector<Vertex> sorted = vertices;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

Walk Walk::reversed() const { return Walk(std::vector<Vertex>(vertices.rbegin(), vertices.rend())); }

Walk Walk::slice(std::size_t from, std::size_t to) const {
  if (from >= vertices.size() || to >= vertices.size()) throw InvalidArgument("walk slice out of range");
  std::vector<Vertex> out;
  if (from <= to) {
    out.assign(vertices.begin() + static_cast<std::ptrdiff_t>(from),
               vertices.begin() + static_cast<std::ptrdiff_t>(to) + 1);
  } else {
    for (std::size_t i = from + 1; i-- > to;) out.push_back(vertices[i]);
  }
  return Walk(std::move(out));
}

Walk concatenate(const Walk& a, const Walk& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (a.end() != b.start()) {
    throw InvalidArgument("cannot concatenate: walk ends at " + std::to_string(a.end()) + " but next starts at " +
                          std::to_string(b.start()));
  }
  Walk out = a;
  out.vertices.insert(out.vertices.end(), b.vertices.begin() + 1, b.vertices.end());
  return out;
}

bool is_walk_in(const Graph& g, const Walk& w) {
  if (w.empty()) return false;
  for (Vertex v : w.vertices) {
    if (!g.contains(v)) return false;
  }
  for (std::size_t i = 1; i < w.vertices.size(); ++i) {
    if (!g.has_edge(w.vertices[i - 1], w.vertices[i])) return false;
  }
  return true;
}

bool is_geodesic(const Graph& g, const Walk& w) {
  if (!is_walk_in(g, w)) throw InvalidArgument("walk is not embedded in the graph");
  if (!w.is_path()) return false;
  return static_cast<std::size_t>(distance(g, w.start(), w.end())) == w.length();
}

bool is_almost_shortest(const Graph& g, const Walk& w, Distance gamma) {
  if (!is_walk_in(g, w)) throw InvalidArgument("walk is not embedded in the graph");
  const Distance d = distance(g, w.start(), w.end());
  if (d == kUnreachable) return false;
  const auto len = static_cast<std::int64_t>(w.length());
  return len - d <= gamma && d - len <= gamma;
}

ShortestPathTree shortest_path_tree(const Graph& g, Vertex root) {
  ShortestPathTree tree;
  tree.root = root;
  tree.dist = bfs(g, root).dist;
  tree.parent.assign(g.vertex_count(), -1);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const Distance dv = tree.dist[v];
    if (dv == kUnreachable || dv == 0) continue;
    for (Vertex w : g.neighbors(static_cast<Vertex>(v))) {
      if (tree.dist[static_cast<std::size_t>(w)] == dv - 1) {
        tree.parent[v] = w;  // neighbors are sorted, so this is the smallest id
        break;
      }
    }
  }
  return tree;
}

Walk ShortestPathTree::path_to(Vertex v) const {
  if (dist[static_cast<std::size_t>(v)] == kUnreachable) {
    throw InvalidArgument("vertex " + std::to_string(v) + " unreachable from " + std::to_string(root));
  }
  std::vector<Vertex> out;
  for (Vertex cur = v; cur != -1; cur = parent[static_cast<std::size_t>(cur)]) out.push_back(cur);
  std::reverse(out.begin(), out.end());
  return Walk(std::move(out));
}

Walk shortest_path(const Graph& g, Vertex from, Vertex to) {
  check_vertex(g, from);
  // Following the tree rooted at `to` from `from` picks the smallest admissible id at every step.
  auto tree = shortest_path_tree(g, to);
  return tree.path_to(from).reversed();
}

}  // namespace coarsepw
