#include "coarsepw/decomp.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "coarsepw/error.hpp"

namespace coarsepw {
namespace {

Distance clamp_radius(const Graph& g, std::int64_t r) {
  // Any radius beyond n - 1 reaches the whole component.
  return static_cast<Distance>(std::min<std::int64_t>(r, static_cast<std::int64_t>(g.vertex_count())));
}

VertexSet sorted_union(VertexSet a, const VertexSet& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

void require_valid_cover(const Graph& g, const GeodesicCover& cover) {
  const auto report = verify_cover(g, cover);
  if (!report.ok()) throw InvalidArgument("cover is invalid: " + report.violations.front());
}

SphereCover cover_sphere_with(const Graph& g, const GeodesicCover& cover, const Snapper& snapper,
                              const ShortestPathTree& tree, Distance d) {
  SphereCover out;
  VertexSet members;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (tree.dist[v] == d) members.push_back(static_cast<Vertex>(v));
  }
  const std::size_t k = cover.k();
  const Distance rho = cover.rho;

  struct Snapped {
    SnapPath path;
    std::size_t length;
  };
  std::map<SnapType, std::vector<std::pair<Vertex, Snapped>>> groups;
  for (Vertex v : members) {
    SnapPath sp = simplify(snapper.snap(tree.path_to(v)), k, rho);
    const std::size_t len = concat(sp).length();
    SnapType t = type_of(sp);
    groups[std::move(t)].push_back({v, Snapped{std::move(sp), len}});
  }

  const auto gamma = static_cast<std::int64_t>(4 * k) * rho;
  VertexSet centers;
  for (auto& [type, group] : groups) {
    TypeClass cls;
    cls.type = type;
    cls.representative = group.front().first;
    const Snapped& rep = group.front().second;
    for (const auto& [v, snapped] : group) {
      cls.members.push_back(v);
      const auto diff = static_cast<std::int64_t>(snapped.length) - static_cast<std::int64_t>(rep.length);
      const auto report = check_same_type_proximity(g, cover, rep.path, snapped.path, std::abs(diff));
      cls.max_distance = std::max(cls.max_distance, report.actual);
      cls.max_bound = std::max(cls.max_bound, report.bound);
      cls.proximity_ok = cls.proximity_ok && report.ok;
    }
    cls.cover_radius = same_type_bound(k, rho, type.level, gamma);
    if (rho > 0) {
      const auto ell = static_cast<std::size_t>((cls.cover_radius + rho - 1) / rho);
      const std::size_t max_ell = g.vertex_count() / static_cast<std::size_t>(rho) + 1;
      centers = sorted_union(std::move(centers), cover_ball(g, cover, cls.representative, std::min(ell, max_ell)).centers);
    }
    out.classes.push_back(std::move(cls));
  }

  out.certificate.target = members;
  if (rho == 0) {
    // Radius-0 balls only cover their centers.
    out.certificate.centers = members;
    out.certificate.radius = 0;
  } else {
    out.certificate.centers = std::move(centers);
    out.certificate.radius = 2 * rho;
  }
  out.raw_center_count = out.certificate.centers.size();
  prune_certificate(g, out.certificate);
  return out;
}

}  // namespace

VertexSet uncovered_by(const Graph& g, const CoverCertificate& cert) {
  VertexSet missing;
  if (cert.centers.empty()) return cert.target;
  const auto field = bfs_bounded(g, cert.centers, cert.radius);
  for (Vertex v : cert.target) {
    if (!field.reachable(v)) missing.push_back(v);
  }
  return missing;
}

void prune_certificate(const Graph& g, CoverCertificate& cert) {
  std::vector<int> count(g.vertex_count(), 0);
  std::vector<bool> is_target(g.vertex_count(), false);
  for (Vertex t : cert.target) is_target[static_cast<std::size_t>(t)] = true;
  std::vector<VertexSet> reach;
  reach.reserve(cert.centers.size());
  for (Vertex c : cert.centers) {
    const auto field = bfs_bounded(g, std::span<const Vertex>(&c, 1), cert.radius);
    VertexSet covered;
    for (Vertex t : cert.target) {
      if (field.reachable(t)) covered.push_back(t);
    }
    for (Vertex t : covered) ++count[static_cast<std::size_t>(t)];
    reach.push_back(std::move(covered));
  }
  std::vector<bool> keep(cert.centers.size(), true);
  for (std::size_t i = cert.centers.size(); i-- > 0;) {
    const bool redundant = std::all_of(reach[i].begin(), reach[i].end(),
                                       [&](Vertex t) { return count[static_cast<std::size_t>(t)] >= 2; });
    if (!redundant) continue;
    keep[i] = false;
    for (Vertex t : reach[i]) --count[static_cast<std::size_t>(t)];
  }
  VertexSet kept;
  for (std::size_t i = 0; i < cert.centers.size(); ++i) {
    if (keep[i]) kept.push_back(cert.centers[i]);
  }
  cert.centers = std::move(kept);
}

CoverCertificate greedy_certificate(const Graph& g, std::span<const Vertex> target, Distance radius) {
  CoverCertificate cert;
  cert.radius = radius;
  cert.target.assign(target.begin(), target.end());
  std::sort(cert.target.begin(), cert.target.end());
  cert.target.erase(std::unique(cert.target.begin(), cert.target.end()), cert.target.end());
  if (cert.target.empty()) return cert;

  const VertexSet candidates = vicinity(g, cert.target, radius);
  std::vector<VertexSet> reach;
  for (Vertex c : candidates) {
    const auto field = bfs_bounded(g, std::span<const Vertex>(&c, 1), radius);
    VertexSet covered;
    for (Vertex t : cert.target) {
      if (field.reachable(t)) covered.push_back(t);
    }
    reach.push_back(std::move(covered));
  }
  std::vector<bool> done(g.vertex_count(), false);
  std::size_t remaining = cert.target.size();
  while (remaining > 0) {
    std::size_t best = 0, best_gain = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const auto gain = static_cast<std::size_t>(std::count_if(
          reach[i].begin(), reach[i].end(), [&](Vertex t) { return !done[static_cast<std::size_t>(t)]; }));
      if (gain > best_gain) {
        best = i;
        best_gain = gain;
      }
    }
    for (Vertex t : reach[best]) {
      if (!done[static_cast<std::size_t>(t)]) {
        done[static_cast<std::size_t>(t)] = true;
        --remaining;
      }
    }
    cert.centers.push_back(candidates[best]);
  }
  std::sort(cert.centers.begin(), cert.centers.end());
  return cert;
}

CoverCertificate cover_ball(const Graph& g, const GeodesicCover& cover, Vertex v, std::size_t ell) {
  if (!g.contains(v)) throw InvalidArgument("vertex " + std::to_string(v) + " out of range");
  const Distance rho = cover.rho;
  const auto reach = static_cast<std::int64_t>(ell + 1) * rho;
  const auto near = bfs_bounded(g, std::span<const Vertex>(&v, 1), clamp_radius(g, reach));

  CoverCertificate cert;
  cert.radius = 2 * rho;
  for (const auto& path : cover.paths) {
    // Distances along a geodesic are position differences, so greedy in path order is maximal.
    std::int64_t last_pos = -1;
    for (std::size_t pos = 0; pos < path.vertices.size(); ++pos) {
      if (!near.reachable(path.vertices[pos])) continue;
      if (last_pos < 0 || static_cast<std::int64_t>(pos) - last_pos > rho) {
        cert.centers.push_back(path.vertices[pos]);
        last_pos = static_cast<std::int64_t>(pos);
      }
    }
  }
  std::sort(cert.centers.begin(), cert.centers.end());
  cert.centers.erase(std::unique(cert.centers.begin(), cert.centers.end()), cert.centers.end());
  cert.target = ball(g, v, clamp_radius(g, static_cast<std::int64_t>(ell) * rho));
  return cert;
}

SphereCover cover_sphere(const Graph& g, const GeodesicCover& cover, Vertex u, Distance d) {
  if (!g.contains(u)) throw InvalidArgument("vertex " + std::to_string(u) + " out of range");
  const Snapper snapper(g, cover);
  return cover_sphere_with(g, cover, snapper, shortest_path_tree(g, u), d);
}

std::size_t PartitionDecomposition::width() const {
  std::size_t best = 0;
  for (const auto& c : certificates) best = std::max(best, c.centers.size());
  return best;
}

std::vector<std::vector<std::size_t>> PartitionDecomposition::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(nodes);
  for (const auto& [a, b] : edges) {
    if (a < nodes && b < nodes) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

std::size_t PartitionDecomposition::degree() const {
  std::size_t best = 0;
  for (const auto& list : adjacency()) best = std::max(best, list.size());
  return best;
}

std::vector<std::size_t> PartitionDecomposition::node_of(std::size_t n) const {
  constexpr auto kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> out(n, kNone);
  for (std::size_t x = 0; x < bags.size(); ++x) {
    for (Vertex v : bags[x]) {
      if (v < 0 || static_cast<std::size_t>(v) >= n) throw InvalidArgument("bag vertex out of range");
      if (out[static_cast<std::size_t>(v)] != kNone) {
        throw InvalidArgument("vertex " + std::to_string(v) + " appears in two bags");
      }
      out[static_cast<std::size_t>(v)] = x;
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (out[v] == kNone) throw InvalidArgument("vertex " + std::to_string(v) + " is in no bag");
  }
  return out;
}

PathPartitionBuild build_path_partition_detailed(const Graph& g, const GeodesicCover& cover) {
  require_valid_cover(g, cover);
  const Distance rho = cover.rho;
  const Distance thickness = std::max<Distance>(2 * rho, 1);
  const Snapper snapper(g, cover);

  PathPartitionBuild out;
  auto& pd = out.decomposition;
  pd.rho = thickness;
  for (const auto& component : connected_components(g)) {
    const auto tree = shortest_path_tree(g, component.front());
    Distance ecc = 0;
    for (Vertex v : component) ecc = std::max(ecc, tree.dist[static_cast<std::size_t>(v)]);
    const std::size_t layers = static_cast<std::size_t>(ecc / thickness) + 1;
    std::vector<VertexSet> bags(layers);
    for (Vertex v : component) bags[static_cast<std::size_t>(tree.dist[static_cast<std::size_t>(v)] / thickness)].push_back(v);

    for (std::size_t i = 0; i < layers; ++i) {
      CoverCertificate cert;
      cert.target = bags[i];
      if (rho == 0) {
        cert.centers = bags[i];
        cert.radius = 0;
      } else {
        // Sphere centers at radius 2 rho, each re-covered by balls of radius 4 rho.
        const auto sphere_cover = cover_sphere_with(g, cover, snapper, tree, static_cast<Distance>(i) * thickness);
        out.max_type_classes = std::max(out.max_type_classes, sphere_cover.classes.size());
        for (Vertex s : sphere_cover.certificate.centers) {
          cert.centers = sorted_union(std::move(cert.centers), cover_ball(g, cover, s, 4).centers);
        }
        cert.radius = 2 * rho;
      }
      out.raw_certificate_sizes.push_back(cert.centers.size());
      if (!uncovered_by(g, cert).empty()) throw std::logic_error("bag certificate does not cover its bag");
      prune_certificate(g, cert);
      if (pd.nodes > 0) pd.edges.emplace_back(pd.nodes - 1, pd.nodes);
      pd.bags.push_back(std::move(bags[i]));
      pd.certificates.push_back(std::move(cert));
      ++pd.nodes;
    }
  }
  return out;
}

PartitionDecomposition build_path_partition(const Graph& g, const GeodesicCover& cover) {
  return build_path_partition_detailed(g, cover).decomposition;
}

PartitionDecomposition make_decomposition(const Graph& g, Distance rho, std::vector<VertexSet> bags,
                                          std::vector<std::pair<std::size_t, std::size_t>> edges) {
  PartitionDecomposition pd;
  pd.rho = rho;
  pd.nodes = bags.size();
  pd.edges = std::move(edges);
  for (auto& bag : bags) {
    std::sort(bag.begin(), bag.end());
    pd.certificates.push_back(greedy_certificate(g, bag, rho));
  }
  pd.bags = std::move(bags);
  return pd;
}

Report validate_decomposition(const Graph& g, const PartitionDecomposition& pd) {
  Report report;
  const std::size_t n = g.vertex_count();
  if (pd.rho < 0) report.add("negative decomposition radius");
  if (pd.bags.size() != pd.nodes) report.add("bag count differs from node count");
  if (pd.certificates.size() != pd.bags.size()) report.add("certificate count differs from bag count");
  if (!report.ok()) return report;

  // Tree shape: nodes - 1 distinct edges connecting all nodes.
  if (pd.nodes > 0 && pd.edges.size() != pd.nodes - 1) {
    report.add("tree has " + std::to_string(pd.edges.size()) + " edges for " + std::to_string(pd.nodes) + " nodes");
  }
  for (const auto& [a, b] : pd.edges) {
    if (a >= pd.nodes || b >= pd.nodes || a == b) report.add("invalid tree edge");
  }
  if (!report.ok()) return report;
  const auto adj = pd.adjacency();
  if (pd.nodes > 0) {
    std::vector<bool> seen(pd.nodes, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t visited = 0;
    while (!stack.empty()) {
      const auto x = stack.back();
      stack.pop_back();
      ++visited;
      for (auto y : adj[x]) {
        if (!seen[y]) {
          seen[y] = true;
          stack.push_back(y);
        }
      }
    }
    if (visited != pd.nodes) report.add("tree is not connected");
  }

  std::vector<std::size_t> node_of;
  try {
    node_of = pd.node_of(n);
  } catch (const InvalidArgument& e) {
    report.add(std::string("bags do not partition V(G): ") + e.what());
    return report;
  }

  for (std::size_t x = 0; x < pd.nodes; ++x) {
    if (pd.bags[x].empty()) continue;
    const auto field = bfs_bounded(g, pd.bags[x], pd.rho);
    for (std::size_t v = 0; v < n; ++v) {
      if (field.dist[v] == kUnreachable) continue;
      const std::size_t y = node_of[v];
      if (y == x || std::binary_search(adj[x].begin(), adj[x].end(), y)) continue;
      report.add("vertex " + std::to_string(v) + " in bag " + std::to_string(y) + " is within " +
                 std::to_string(pd.rho) + " of bag " + std::to_string(x) + " but the nodes are not adjacent");
      break;
    }
  }

  for (std::size_t x = 0; x < pd.nodes; ++x) {
    CoverCertificate cert = pd.certificates[x];
    if (cert.radius > pd.rho) report.add("certificate " + std::to_string(x) + " radius exceeds decomposition radius");
    for (Vertex c : cert.centers) {
      if (!g.contains(c)) report.add("certificate " + std::to_string(x) + " has an out-of-range center");
    }
    if (!report.ok()) continue;
    cert.target = pd.bags[x];
    const auto missing = uncovered_by(g, cert);
    if (!missing.empty()) {
      report.add("certificate " + std::to_string(x) + " misses vertex " + std::to_string(missing.front()));
    }
  }
  return report;
}

std::vector<int> exact_width(const Graph& g, const PartitionDecomposition& pd, const oracle::Budget& budget) {
  std::vector<int> out;
  out.reserve(pd.bags.size());
  for (const auto& bag : pd.bags) out.push_back(oracle::brute_dist_ds(g, bag, pd.rho, budget));
  return out;
}

}  // namespace coarsepw
