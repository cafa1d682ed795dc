#include "corpus.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "coarsepw/metric.hpp"

namespace coarsepw::testing {

Instance with_rho(Instance inst, Distance rho) {
  inst.cover.rho = rho;
  inst.name += " @rho=" + std::to_string(rho);
  return inst;
}

namespace {

void add_radii(std::vector<Instance>& out, const Instance& inst, std::size_t max_n) {
  if (inst.graph.vertex_count() > max_n || inst.cover.k() > 3) return;
  for (Distance rho = inst.cover.rho; rho <= 2; ++rho) out.push_back(with_rho(inst, rho));
}

}  // namespace

std::vector<Instance> small_corpus(std::size_t max_n) {
  std::vector<Instance> out;
  for (std::size_t n : {1, 2, 3, 5, 9, 12}) add_radii(out, make_path(n), max_n);
  for (std::size_t n = 3; n <= 16; ++n) add_radii(out, make_cycle(n), max_n);
  add_radii(out, make_grid(3, 3), max_n);
  add_radii(out, make_grid(4, 4), max_n);
  add_radii(out, make_grid(5, 2), max_n);
  add_radii(out, make_cross(4, 3), max_n);
  add_radii(out, make_cross(3, 2), max_n);
  add_radii(out, make_cross(5, 2), max_n);
  for (std::size_t k = 1; k <= 3; ++k) {
    for (Distance rho = 0; rho <= 2; ++rho) {
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        auto inst = make_random_cover_union(k, 3 + seed, rho, seed * 7919 + k);
        if (inst.graph.vertex_count() <= max_n) out.push_back(std::move(inst));
      }
    }
  }
  return out;
}

std::vector<Instance> snap_corpus() {
  std::vector<Instance> out = small_corpus(200);
  add_radii(out, make_cross(4, 9), 200);
  return out;
}

Graph random_tree(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t v = 1; v < n; ++v) {
    const auto parent = static_cast<Vertex>(rng() % v);
    edges.emplace_back(parent, static_cast<Vertex>(v));
  }
  return Graph(n, edges);
}

Graph random_connected(std::size_t n, std::size_t extra, std::mt19937_64& rng) {
  auto edges = random_tree(n, rng).edges();
  for (std::size_t i = 0; i < extra && n > 2; ++i) {
    auto a = static_cast<Vertex>(rng() % n);
    auto b = static_cast<Vertex>(rng() % n);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (std::find(edges.begin(), edges.end(), std::make_pair(a, b)) == edges.end()) edges.emplace_back(a, b);
  }
  return Graph(n, edges);
}

PartitionDecomposition random_layered_decomposition(const Graph& g, Distance rho, std::mt19937_64& rng, bool branch) {
  const std::size_t n = g.vertex_count();
  const auto root = static_cast<Vertex>(rng() % n);
  const auto depth = bfs(g, root).dist;
  const Distance max_depth = *std::max_element(depth.begin(), depth.end());
  const Distance base = std::max<Distance>(rho, 1);

  std::vector<Distance> starts{0};
  while (true) {
    const Distance next = starts.back() + base + static_cast<Distance>(rng() % 3);
    if (next > max_depth) break;
    starts.push_back(next);
  }
  auto annulus_of = [&](Distance d) {
    return static_cast<std::size_t>(std::upper_bound(starts.begin(), starts.end(), d) - starts.begin() - 1);
  };

  std::vector<VertexSet> bags;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  // group[j][v] = bag index of v for vertices of annulus j (and of the component label otherwise)
  std::vector<std::size_t> bag_of(n, 0);
  std::vector<std::vector<int>> component(starts.size(), std::vector<int>(n, -1));
  for (std::size_t j = 0; j < starts.size(); ++j) {
    const Distance floor = branch ? starts[j] - rho : 0;
    int label = 0;
    for (std::size_t s = 0; s < n; ++s) {
      if (depth[s] < floor || component[j][s] >= 0) continue;
      std::vector<Vertex> stack{static_cast<Vertex>(s)};
      component[j][s] = label;
      while (!stack.empty()) {
        const Vertex v = stack.back();
        stack.pop_back();
        for (Vertex w : g.neighbors(v)) {
          const auto wi = static_cast<std::size_t>(w);
          if (depth[wi] >= floor && component[j][wi] < 0) {
            component[j][wi] = label;
            stack.push_back(w);
          }
        }
      }
      ++label;
    }
    std::map<int, std::size_t> bag_for_label;
    for (std::size_t v = 0; v < n; ++v) {
      if (annulus_of(depth[v]) != j) continue;
      auto [it, inserted] = bag_for_label.try_emplace(component[j][v], bags.size());
      if (inserted) bags.emplace_back();
      bags[it->second].push_back(static_cast<Vertex>(v));
      bag_of[v] = it->second;
    }
    if (j == 0) continue;
    for (const auto& [label_j, bag] : bag_for_label) {
      // parent: the annulus j-1 bag in the same component of the graph at depth >= starts[j-1] - rho
      const Vertex member = bags[bag].front();
      const int parent_label = component[j - 1][static_cast<std::size_t>(member)];
      for (std::size_t v = 0; v < n; ++v) {
        if (annulus_of(depth[v]) == j - 1 && component[j - 1][v] == parent_label) {
          edges.emplace_back(bag_of[v], bag);
          break;
        }
      }
    }
  }
  return make_decomposition(g, rho, std::move(bags), std::move(edges));
}

bool is_distance_independent(const Graph& g, const VertexSet& set, Distance distance) {
  for (Vertex u : set) {
    const auto field = bfs(g, u);
    for (Vertex v : set) {
      if (u != v && field[v] <= distance) return false;
    }
  }
  return true;
}

bool dominates_all(const Graph& g, const VertexSet& set, Distance radius) {
  if (g.vertex_count() == 0) return true;
  if (set.empty()) return false;
  const auto field = bfs(g, set);
  return std::all_of(field.dist.begin(), field.dist.end(), [&](Distance d) { return d <= radius; });
}

VertexSet all_vertices(const Graph& g) {
  VertexSet out(g.vertex_count());
  std::iota(out.begin(), out.end(), 0);
  return out;
}

}  // namespace coarsepw::testing
