#include "coarsepw/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>

#include "coarsepw/error.hpp"

namespace coarsepw::oracle {
namespace {

using Mask = std::uint64_t;

VertexSet normalized_targets(const Graph& g, std::span<const Vertex> targets) {
  VertexSet out(targets.begin(), targets.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (Vertex v : out) {
    if (!g.contains(v)) throw InvalidArgument("vertex " + std::to_string(v) + " out of range");
  }
  if (out.size() > 64) {
    throw BudgetExceeded("oracle supports at most 64 target vertices, got " + std::to_string(out.size()));
  }
  return out;
}

Mask bit(std::size_t i) { return Mask{1} << i; }

class IndependentSetSearch {
 public:
  IndependentSetSearch(std::vector<Mask> conflicts, std::size_t node_budget)
      : conflicts_(std::move(conflicts)), node_budget_(node_budget) {}

  int run(Mask candidates) {
    recurse(candidates, 0);
    return best_;
  }

 private:
  void recurse(Mask candidates, int size) {
    if (++nodes_ > node_budget_) {
      throw BudgetExceeded("independent set search expanded more than " + std::to_string(node_budget_) + " nodes");
    }
    if (candidates == 0) {
      best_ = std::max(best_, size);
      return;
    }
    if (size + std::popcount(candidates) <= best_) return;
    // Branch on the candidate with the most conflicts among the remaining ones.
    std::size_t pick = 0;
    int pick_degree = -1;
    for (Mask rest = candidates; rest != 0; rest &= rest - 1) {
      const auto i = static_cast<std::size_t>(std::countr_zero(rest));
      const int degree = std::popcount(conflicts_[i] & candidates);
      if (degree > pick_degree) {
        pick = i;
        pick_degree = degree;
      }
    }
    recurse(candidates & ~conflicts_[pick] & ~bit(pick), size + 1);
    if (pick_degree > 0) recurse(candidates & ~bit(pick), size);
  }

  std::vector<Mask> conflicts_;
  std::size_t node_budget_;
  std::size_t nodes_ = 0;
  int best_ = 0;
};

class SetCoverSearch {
 public:
  SetCoverSearch(std::vector<Mask> sets, std::size_t node_budget) : sets_(std::move(sets)), node_budget_(node_budget) {
    for (Mask m : sets_) widest_ = std::max(widest_, std::popcount(m));
  }

  bool feasible(Mask uncovered, int budget_left) {
    if (uncovered == 0) return true;
    if (budget_left == 0) return false;
    if (std::popcount(uncovered) > budget_left * widest_) return false;
    if (++nodes_ > node_budget_) {
      throw BudgetExceeded("dominating set search expanded more than " + std::to_string(node_budget_) + " nodes");
    }
    const Mask first = uncovered & (~uncovered + 1);
    for (Mask s : sets_) {
      if ((s & first) != 0 && feasible(uncovered & ~s, budget_left - 1)) return true;
    }
    return false;
  }

 private:
  std::vector<Mask> sets_;
  std::size_t node_budget_;
  std::size_t nodes_ = 0;
  int widest_ = 0;
};

}  // namespace

int brute_dist_is(const Graph& g, std::span<const Vertex> targets, Distance two_rho, const Budget& budget) {
  const VertexSet a = normalized_targets(g, targets);
  if (a.empty()) return 0;
  std::vector<Mask> conflicts(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto field = bfs_bounded(g, std::span<const Vertex>(&a[i], 1), two_rho);
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (i != j && field[a[j]] != kUnreachable) conflicts[i] |= bit(j);
    }
  }
  const Mask all = a.size() == 64 ? ~Mask{0} : bit(a.size()) - 1;
  return IndependentSetSearch(std::move(conflicts), budget.max_nodes_expanded).run(all);
}

int brute_dist_ds(const Graph& g, std::span<const Vertex> targets, Distance rho, const Budget& budget) {
  const VertexSet a = normalized_targets(g, targets);
  if (a.empty()) return 0;
  std::vector<Mask> dominated_by(g.vertex_count(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto field = bfs_bounded(g, std::span<const Vertex>(&a[i], 1), rho);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      if (field.dist[v] != kUnreachable) dominated_by[v] |= bit(i);
    }
  }
  // Keep only inclusion-maximal coverage sets.
  std::vector<Mask> sets = dominated_by;
  std::sort(sets.begin(), sets.end(), [](Mask x, Mask y) {
    const int px = std::popcount(x), py = std::popcount(y);
    return px != py ? px > py : x < y;
  });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<Mask> maximal;
  for (Mask s : sets) {
    if (s == 0) continue;
    const bool dominated = std::any_of(maximal.begin(), maximal.end(), [s](Mask m) { return (s & ~m) == 0; });
    if (!dominated) maximal.push_back(s);
  }

  const Mask all = a.size() == 64 ? ~Mask{0} : bit(a.size()) - 1;
  SetCoverSearch search(std::move(maximal), budget.max_nodes_expanded);
  for (std::size_t t = 1; t <= budget.max_subset_size; ++t) {
    if (search.feasible(all, static_cast<int>(t))) return static_cast<int>(t);
  }
  throw BudgetExceeded("no dominating set of size <= " + std::to_string(budget.max_subset_size));
}

std::vector<Walk> brute_all_shortest_paths(const Graph& g, Vertex u, Vertex v, std::size_t cap) {
  const auto to_v = bfs(g, v);
  if (!g.contains(u)) throw InvalidArgument("vertex " + std::to_string(u) + " out of range");
  std::vector<Walk> out;
  if (to_v[u] == kUnreachable) return out;

  std::vector<Vertex> stack{u};
  auto extend = [&](auto&& self) -> void {
    const Vertex cur = stack.back();
    if (cur == v) {
      if (out.size() == cap) {
        throw BudgetExceeded("more than " + std::to_string(cap) + " shortest paths between " + std::to_string(u) +
                             " and " + std::to_string(v));
      }
      out.emplace_back(stack);
      return;
    }
    for (Vertex w : g.neighbors(cur)) {
      if (to_v[w] == to_v[cur] - 1) {
        stack.push_back(w);
        self(self);
        stack.pop_back();
      }
    }
  };
  extend(extend);
  return out;
}

}  // namespace coarsepw::oracle
