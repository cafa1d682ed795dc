#include "coarsepw/generators.hpp"

#include <charconv>
#include <random>

#include "coarsepw/error.hpp"
#include "coarsepw/metric.hpp"

namespace coarsepw {
namespace {

using EdgeList = std::vector<std::pair<Vertex, Vertex>>;

Walk walk_of(std::vector<Vertex> vs) { return Walk(std::move(vs)); }

std::uint64_t parse_unsigned(const std::string& text, const std::string& what) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw InvalidArgument("invalid " + what + ": '" + text + "'");
  return value;
}

class RandomCoverUnion {
 public:
  RandomCoverUnion(std::size_t k, std::size_t len, Distance rho, std::uint64_t seed)
      : k_(k), len_(len), rho_(rho), rng_(seed) {}

  Instance build() {
    for (std::size_t i = 0; i < k_; ++i) {
      std::vector<Vertex> path;
      for (std::size_t j = 0; j <= len_; ++j) {
        const Vertex v = fresh();
        if (j > 0) edges_.emplace_back(path.back(), v);
        path.push_back(v);
      }
      paths_.push_back(std::move(path));
    }
    for (std::size_t i = 1; i < k_; ++i) {
      const std::size_t t = draw(0, i - 1);
      connect(pick(t), pick(i), connector_length());
    }
    for (std::size_t attempt = 0; attempt < k_; ++attempt) {
      if (k_ < 2) break;
      const std::size_t a = draw(0, k_ - 1);
      std::size_t b = draw(0, k_ - 2);
      if (b >= a) ++b;
      const Vertex u = pick(a);
      const Vertex v = pick(b);
      const auto saved_edges = edges_.size();
      const auto saved_n = n_;
      connect(u, v, connector_length());
      if (!planted_paths_geodesic()) {
        edges_.resize(saved_edges);
        n_ = saved_n;
      }
    }
    if (rho_ > 0) {
      const std::size_t hairs = draw(0, len_ + 1);
      for (std::size_t h = 0; h < hairs; ++h) {
        Vertex prev = pick(draw(0, k_ - 1));
        const auto length = draw(1, static_cast<std::size_t>(rho_));
        for (std::size_t s = 0; s < length; ++s) {
          const Vertex v = fresh();
          edges_.emplace_back(prev, v);
          prev = v;
        }
      }
    }
    Instance out;
    out.graph = Graph(n_, edges_);
    out.cover.rho = rho_;
    for (auto& p : paths_) out.cover.paths.push_back(walk_of(p));
    return out;
  }

 private:
  Vertex fresh() { return static_cast<Vertex>(n_++); }

  std::size_t draw(std::size_t lo, std::size_t hi) { return lo + static_cast<std::size_t>(rng_() % (hi - lo + 1)); }

  Vertex pick(std::size_t path) { return paths_[path][draw(0, len_)]; }

  std::size_t connector_length() { return draw(1, 2 * static_cast<std::size_t>(rho_) + 1); }

  void connect(Vertex u, Vertex v, std::size_t length) {
    Vertex prev = u;
    for (std::size_t s = 1; s < length; ++s) {
      const Vertex w = fresh();
      edges_.emplace_back(prev, w);
      prev = w;
    }
    edges_.emplace_back(prev, v);
  }

  bool planted_paths_geodesic() const {
    const Graph g(n_, edges_);
    for (const auto& p : paths_) {
      const auto field = bfs(g, p.front());
      for (std::size_t j = 0; j < p.size(); ++j) {
        if (field[p[j]] != static_cast<Distance>(j)) return false;
      }
    }
    return true;
  }

  std::size_t k_;
  std::size_t len_;
  Distance rho_;
  std::mt19937_64 rng_;
  std::size_t n_ = 0;
  EdgeList edges_;
  std::vector<std::vector<Vertex>> paths_;
};

}  // namespace

Instance make_path(std::size_t n) {
  if (n == 0) throw InvalidArgument("path needs at least one vertex");
  EdgeList edges;
  std::vector<Vertex> all;
  for (std::size_t v = 0; v < n; ++v) {
    all.push_back(static_cast<Vertex>(v));
    if (v > 0) edges.emplace_back(static_cast<Vertex>(v - 1), static_cast<Vertex>(v));
  }
  Instance out{"path " + std::to_string(n), Graph(n, edges), {}, std::nullopt};
  out.cover.paths.push_back(walk_of(std::move(all)));
  return out;
}

Instance make_cycle(std::size_t n) {
  if (n < 3) throw InvalidArgument("cycle needs at least three vertices");
  EdgeList edges;
  for (std::size_t v = 0; v < n; ++v) {
    const auto a = static_cast<Vertex>(v);
    const auto b = static_cast<Vertex>((v + 1) % n);
    edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  Instance out{"cycle " + std::to_string(n), Graph(n, edges), {}, std::nullopt};
  std::vector<Vertex> first, second;
  for (std::size_t v = 0; v <= n / 2; ++v) first.push_back(static_cast<Vertex>(v));
  for (std::size_t v = (n + 1) / 2; v < n; ++v) second.push_back(static_cast<Vertex>(v));
  second.push_back(0);
  out.cover.paths.push_back(walk_of(std::move(first)));
  out.cover.paths.push_back(walk_of(std::move(second)));
  return out;
}

Instance make_grid(std::size_t w, std::size_t h) {
  if (w == 0 || h == 0) throw InvalidArgument("grid needs positive dimensions");
  EdgeList edges;
  auto id = [w](std::size_t r, std::size_t c) { return static_cast<Vertex>(r * w + c); };
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      if (c + 1 < w) edges.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < h) edges.emplace_back(id(r, c), id(r + 1, c));
    }
  }
  Instance out{"grid " + std::to_string(w) + " " + std::to_string(h), Graph(w * h, edges), {}, std::nullopt};
  std::vector<std::size_t> rows;
  if (h == 1) {
    rows.push_back(0);
  } else {
    out.cover.rho = 1;
    for (std::size_t r = 1; r < h; r += 3) rows.push_back(r);
    if (rows.back() + 1 < h - 1) rows.push_back(h - 1);
  }
  for (std::size_t r : rows) {
    std::vector<Vertex> row;
    for (std::size_t c = 0; c < w; ++c) row.push_back(id(r, c));
    out.cover.paths.push_back(walk_of(std::move(row)));
  }
  return out;
}

Instance make_cross(std::size_t arms, std::size_t len) {
  if (arms == 0 || len == 0) throw InvalidArgument("cross needs at least one arm of positive length");
  EdgeList edges;
  auto id = [len](std::size_t arm, std::size_t step) { return static_cast<Vertex>(1 + arm * len + (step - 1)); };
  for (std::size_t a = 0; a < arms; ++a) {
    edges.emplace_back(0, id(a, 1));
    for (std::size_t j = 1; j < len; ++j) edges.emplace_back(id(a, j), id(a, j + 1));
  }
  Instance out{"cross " + std::to_string(arms) + " " + std::to_string(len), Graph(1 + arms * len, edges), {},
               std::nullopt};
  for (std::size_t a = 0; a < arms; a += 2) {
    std::vector<Vertex> p;
    for (std::size_t j = len; j >= 1; --j) p.push_back(id(a, j));
    p.push_back(0);
    if (a + 1 < arms) {
      for (std::size_t j = 1; j <= len; ++j) p.push_back(id(a + 1, j));
    } else {
      std::reverse(p.begin(), p.end());
    }
    out.cover.paths.push_back(walk_of(std::move(p)));
  }
  return out;
}

Instance make_random_cover_union(std::size_t k, std::size_t len, Distance rho, std::uint64_t seed) {
  if (k == 0) throw InvalidArgument("random-cover-union needs k >= 1");
  if (rho < 0) throw InvalidArgument("random-cover-union needs rho >= 0");
  auto out = RandomCoverUnion(k, len, rho, seed).build();
  out.name = "random-cover-union " + std::to_string(k) + " " + std::to_string(len) + " " + std::to_string(rho) + " " +
             std::to_string(seed);
  out.seed = seed;
  return out;
}

Instance generate(const std::vector<std::string>& spec) {
  if (spec.empty()) throw InvalidArgument("empty instance description");
  const auto& family = spec.front();
  auto expect = [&](std::size_t count) {
    if (spec.size() != count + 1) {
      throw InvalidArgument(family + " takes " + std::to_string(count) + " parameters");
    }
  };
  auto arg = [&](std::size_t i, const char* what) { return parse_unsigned(spec[i], what); };
  if (family == "path") {
    expect(1);
    return make_path(arg(1, "n"));
  }
  if (family == "cycle") {
    expect(1);
    return make_cycle(arg(1, "n"));
  }
  if (family == "grid") {
    expect(2);
    return make_grid(arg(1, "w"), arg(2, "h"));
  }
  if (family == "cross") {
    expect(2);
    return make_cross(arg(1, "arms"), arg(2, "len"));
  }
  if (family == "random-cover-union") {
    expect(4);
    return make_random_cover_union(arg(1, "k"), arg(2, "len"), static_cast<Distance>(arg(3, "rho")), arg(4, "seed"));
  }
  throw InvalidArgument("unknown instance family '" + family + "'");
}

}  // namespace coarsepw
