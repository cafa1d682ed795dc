#include "coarsepw/qiso.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "coarsepw/error.hpp"

namespace coarsepw {
namespace {

constexpr std::size_t kMaxNamedViolations = 10;

std::size_t thread_count(std::size_t work) {
  std::size_t threads = 1;
  if (const char* env = std::getenv("COARSEPW_THREADS")) {
    const long parsed = std::strtol(env, nullptr, 10);
    if (parsed > 0) threads = static_cast<std::size_t>(parsed);
  } else {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  return std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(work, 1));
}

// Runs body(i) for i in [0, count) on a few threads; body must only touch slot i.
template <typename Body>
void parallel_for(std::size_t count, Body body) {
  const std::size_t threads = thread_count(count / 16);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += threads) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

double eta(std::size_t k) {
  const double kk = static_cast<double>(k);
  return 200.0 * std::pow(14.0, kk) * std::pow(kk, 2 * kk + 4);
}

}  // namespace

Graph subdivide(const Graph& h, Distance segment_length) {
  if (segment_length < 1) throw InvalidArgument("subdivision length must be positive");
  std::vector<std::pair<Vertex, Vertex>> edges;
  auto next = static_cast<Vertex>(h.vertex_count());
  for (const auto& [a, b] : h.edges()) {
    Vertex prev = a;
    for (Distance s = 1; s < segment_length; ++s) {
      edges.emplace_back(prev, next);
      prev = next++;
    }
    edges.emplace_back(prev, b);
  }
  return Graph(static_cast<std::size_t>(next), edges);
}

DistanceGraphBundle build_distance_graph(const Graph& g, Distance rho_prime) {
  if (rho_prime < 1) throw InvalidArgument("distance graph radius must be positive");
  DistanceGraphBundle bundle;
  bundle.rho_prime = rho_prime;
  const std::size_t n = g.vertex_count();

  std::vector<bool> blocked(n, false);
  for (std::size_t v = 0; v < n; ++v) {
    if (blocked[v]) continue;
    const auto x = static_cast<Vertex>(v);
    bundle.independent.push_back(x);
    const auto field = bfs_bounded(g, std::span<const Vertex>(&x, 1), rho_prime);
    for (std::size_t w = 0; w < n; ++w) {
      if (field.dist[w] != kUnreachable) blocked[w] = true;
    }
  }

  // Layered BFS from I; ties resolve to the smallest member index, i.e. the lowest id.
  bundle.phi.assign(n, 0);
  std::vector<Distance> dist(n, kUnreachable);
  std::vector<Vertex> queue;
  for (std::size_t i = 0; i < bundle.independent.size(); ++i) {
    const Vertex x = bundle.independent[i];
    dist[static_cast<std::size_t>(x)] = 0;
    bundle.phi[static_cast<std::size_t>(x)] = i;
    queue.push_back(x);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto v = static_cast<std::size_t>(queue[head]);
    for (Vertex w : g.neighbors(queue[head])) {
      const auto wi = static_cast<std::size_t>(w);
      if (dist[wi] == kUnreachable) {
        dist[wi] = dist[v] + 1;
        bundle.phi[wi] = bundle.phi[v];
        queue.push_back(w);
      } else if (dist[wi] == dist[v] + 1) {
        bundle.phi[wi] = std::min(bundle.phi[wi], bundle.phi[v]);
      }
    }
  }

  std::vector<std::pair<Vertex, Vertex>> h_edges;
  const auto& ind = bundle.independent;
  for (std::size_t i = 0; i < ind.size(); ++i) {
    const auto field = bfs_bounded(g, std::span<const Vertex>(&ind[i], 1), 3 * rho_prime);
    for (std::size_t j = i + 1; j < ind.size(); ++j) {
      if (field.reachable(ind[j])) h_edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
    }
  }
  bundle.h = Graph(ind.size(), h_edges);
  bundle.h_hat = subdivide(bundle.h, 3 * rho_prime);
  return bundle;
}

Report check_distance_graph(const Graph& g, const DistanceGraphBundle& bundle) {
  Report report;
  const auto& ind = bundle.independent;
  const std::size_t n = g.vertex_count();
  if (!std::is_sorted(ind.begin(), ind.end())) report.add("I is not sorted");
  if (bundle.h.vertex_count() != ind.size()) report.add("H vertex count differs from |I|");
  if (bundle.phi.size() != n) report.add("phi is not defined on every vertex");
  if (!report.ok() || ind.empty()) {
    if (n > 0 && ind.empty()) report.add("I is empty");
    return report;
  }

  std::vector<std::vector<Distance>> from_member;
  for (Vertex x : ind) from_member.push_back(bfs(g, x).dist);

  const Distance edge_limit = 3 * bundle.rho_prime;
  for (std::size_t i = 0; i < ind.size(); ++i) {
    for (std::size_t j = i + 1; j < ind.size(); ++j) {
      const Distance d = from_member[i][static_cast<std::size_t>(ind[j])];
      if (d <= bundle.rho_prime) {
        report.add("I members " + std::to_string(ind[i]) + " and " + std::to_string(ind[j]) + " are within rho'");
      }
      const bool should = d <= edge_limit;
      const bool has = bundle.h.has_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
      if (should != has) {
        report.add(std::string(should ? "missing" : "extra") + " H edge between " + std::to_string(ind[i]) + " and " +
                   std::to_string(ind[j]) + " (distance " + (d == kUnreachable ? std::string("inf") : std::to_string(d)) +
                   ")");
      }
    }
  }

  const auto to_set = bfs(g, ind);
  for (std::size_t v = 0; v < n; ++v) {
    if (to_set.dist[v] > bundle.rho_prime) {
      report.add("I is not maximal: vertex " + std::to_string(v) + " is farther than rho' from it");
    }
    const std::size_t image = bundle.phi[v];
    if (image >= ind.size()) {
      report.add("phi(" + std::to_string(v) + ") out of range");
    } else if (from_member[image][v] != to_set.dist[v]) {
      report.add("phi(" + std::to_string(v) + ") = " + std::to_string(ind[image]) + " is not a nearest member of I");
    }
  }
  if (bundle.h_hat != subdivide(bundle.h, edge_limit)) report.add("Hhat is not the 3rho'-subdivision of H");
  return report;
}

QuasiIsometryCertificate verify_quasi_isometry(const Graph& g, const DistanceGraphBundle& bundle, std::int64_t m,
                                               std::int64_t a) {
  if (m < 1 || a < 0) throw InvalidArgument("quasi-isometry needs m >= 1 and a >= 0");
  QuasiIsometryCertificate cert;
  cert.m = m;
  cert.a = a;
  const std::size_t n = g.vertex_count();
  const auto& hat = bundle.h_hat;
  if (bundle.phi.size() != n) throw InvalidArgument("phi is not defined on every vertex");
  for (std::size_t image : bundle.phi) {
    if (image >= hat.vertex_count()) throw InvalidArgument("phi maps outside Hhat");
  }

  std::vector<std::vector<Distance>> hat_dist(hat.vertex_count());
  std::vector<std::size_t> images(bundle.phi.begin(), bundle.phi.end());
  std::sort(images.begin(), images.end());
  images.erase(std::unique(images.begin(), images.end()), images.end());
  parallel_for(images.size(), [&](std::size_t i) {
    hat_dist[images[i]] = bfs(hat, static_cast<Vertex>(images[i])).dist;
  });

  struct SourceResult {
    std::int64_t upper = std::numeric_limits<std::int64_t>::min();
    double lower = -std::numeric_limits<double>::infinity();
    std::vector<std::string> violations;
  };
  std::vector<SourceResult> per_source(n);
  parallel_for(n, [&](std::size_t u) {
    auto& res = per_source[u];
    const auto dist_g = bfs(g, static_cast<Vertex>(u)).dist;
    const auto& row = hat_dist[bundle.phi[u]];
    for (std::size_t v = u + 1; v < n; ++v) {
      const Distance dg = dist_g[v];
      const Distance dh = row[bundle.phi[v]];
      if (dg == kUnreachable || dh == kUnreachable) {
        if (dg != dh && res.violations.size() < kMaxNamedViolations) {
          res.violations.push_back("pair (" + std::to_string(u) + "," + std::to_string(v) +
                                   "): connected on exactly one side");
        }
        continue;
      }
      const std::int64_t upper = dh - (m * dg + a);
      const double lower = static_cast<double>(dg) / static_cast<double>(m) - static_cast<double>(a) - dh;
      res.upper = std::max(res.upper, upper);
      res.lower = std::max(res.lower, lower);
      const bool upper_bad = upper > 0;
      const bool lower_bad = dg > m * (dh + a);
      if ((upper_bad || lower_bad) && res.violations.size() < kMaxNamedViolations) {
        res.violations.push_back("pair (" + std::to_string(u) + "," + std::to_string(v) + "): dist_G = " +
                                 std::to_string(dg) + ", dist_Hhat = " + std::to_string(dh) +
                                 (upper_bad ? " exceeds the upper bound" : " violates the lower bound"));
      }
    }
  });

  cert.max_upper_violation = n > 1 ? std::numeric_limits<std::int64_t>::min() : -a;
  cert.max_lower_violation = n > 1 ? -std::numeric_limits<double>::infinity() : -static_cast<double>(a);
  for (auto& res : per_source) {
    cert.max_upper_violation = std::max(cert.max_upper_violation, res.upper);
    cert.max_lower_violation = std::max(cert.max_lower_violation, res.lower);
    for (auto& msg : res.violations) {
      cert.distances_ok = false;
      if (cert.violations.size() < kMaxNamedViolations) cert.violations.push_back(std::move(msg));
    }
  }
  if (n > 1 && cert.max_upper_violation == std::numeric_limits<std::int64_t>::min()) {
    // every pair was disconnected on both sides
    cert.max_upper_violation = -a;
    cert.max_lower_violation = -static_cast<double>(a);
  }

  if (hat.vertex_count() > 0) {
    std::vector<Vertex> sources;
    for (std::size_t image : images) sources.push_back(static_cast<Vertex>(image));
    const auto field = bfs_bounded(hat, sources, static_cast<Distance>(std::min<std::int64_t>(a, hat.vertex_count())));
    for (std::size_t w = 0; w < hat.vertex_count(); ++w) {
      if (field.dist[w] == kUnreachable) {
        cert.density_ok = false;
        if (cert.violations.size() < kMaxNamedViolations) {
          cert.violations.push_back("Hhat vertex " + std::to_string(w) + " is farther than " + std::to_string(a) +
                                    " from the image of phi");
        }
      }
    }
  }
  return cert;
}

Report validate_path_decomposition(const Graph& h, const std::vector<VertexSet>& bags) {
  Report report;
  const std::size_t n = h.vertex_count();
  std::vector<std::int64_t> first(n, -1), last(n, -1), count(n, 0);
  for (std::size_t i = 0; i < bags.size(); ++i) {
    for (Vertex v : bags[i]) {
      if (!h.contains(v)) {
        report.add("bag " + std::to_string(i) + " contains unknown vertex " + std::to_string(v));
        continue;
      }
      const auto vi = static_cast<std::size_t>(v);
      if (first[vi] < 0) first[vi] = static_cast<std::int64_t>(i);
      last[vi] = static_cast<std::int64_t>(i);
      ++count[vi];
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (first[v] < 0) {
      report.add("vertex " + std::to_string(v) + " is in no bag");
    } else if (last[v] - first[v] + 1 != count[v]) {
      report.add("bags containing vertex " + std::to_string(v) + " are not consecutive");
    }
  }
  for (const auto& [u, v] : h.edges()) {
    const bool covered = std::any_of(bags.begin(), bags.end(), [&](const VertexSet& bag) {
      return std::binary_search(bag.begin(), bag.end(), u) && std::binary_search(bag.begin(), bag.end(), v);
    });
    if (!covered) report.add("edge (" + std::to_string(u) + "," + std::to_string(v) + ") is in no bag");
  }
  return report;
}

MainTheoremReport main_theorem_certificates(const Graph& g, const GeodesicCover& cover) {
  MainTheoremReport out;
  out.decomposition = build_path_partition(g, cover);
  const auto& pd = out.decomposition;
  const Distance rho_q = std::max<Distance>(cover.rho, 1);
  const Distance rho_prime = 4 * rho_q;
  out.bundle = build_distance_graph(g, rho_prime);

  out.checks.merge(validate_decomposition(g, pd), "decomposition: ");
  out.checks.merge(check_distance_graph(g, out.bundle), "distance graph: ");
  out.quasi_isometry = verify_quasi_isometry(g, out.bundle, 3, 3 * rho_prime);
  if (!out.quasi_isometry.ok()) {
    for (const auto& v : out.quasi_isometry.violations) out.checks.add("quasi-isometry: " + v);
  }

  // H-adjacent members are within 3 rho' in G, i.e. at most ceil(3 rho' / thickness) bags apart.
  out.window = static_cast<std::size_t>((3 * rho_prime + pd.rho - 1) / pd.rho);
  const auto node_of = pd.node_of(g.vertex_count());
  const auto& ind = out.bundle.independent;
  out.path_decomposition.assign(pd.nodes, {});
  for (std::size_t i = 0; i < pd.nodes; ++i) {
    for (std::size_t j = 0; j < ind.size(); ++j) {
      const std::size_t node = node_of[static_cast<std::size_t>(ind[j])];
      if (node >= i && node <= i + out.window) out.path_decomposition[i].push_back(static_cast<Vertex>(j));
    }
    out.max_bag = std::max(out.max_bag, out.path_decomposition[i].size());
  }
  out.checks.merge(validate_path_decomposition(out.bundle.h, out.path_decomposition), "path-decomposition of H: ");

  const std::size_t k = cover.k();
  out.h_degree = out.bundle.h.max_degree();
  out.degree_limit = 26 * k;
  if (out.h_degree >= out.degree_limit && g.vertex_count() > 0) {
    out.checks.add("H has degree " + std::to_string(out.h_degree) + ", not below 26k = " +
                   std::to_string(out.degree_limit));
  }
  const double bag_limit = static_cast<double>(out.window + 1) * 10.0 * static_cast<double>(k) * eta(k);
  if (static_cast<double>(out.max_bag) > bag_limit) {
    out.checks.add("path-decomposition bag of size " + std::to_string(out.max_bag) + " exceeds the width bound");
  }
  return out;
}

}  // namespace coarsepw
