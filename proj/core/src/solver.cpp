#include "coarsepw/solver.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <unordered_map>
#include <string>

#include "coarsepw/error.hpp"
#include "coarsepw/metric.hpp"

namespace coarsepw {
namespace {

std::size_t max_certificate_size(const PartitionDecomposition& pd) {
  std::size_t k = 1;
  for (const auto& cert : pd.certificates) k = std::max(k, cert.centers.size());
  return k;
}

VertexSet node_vicinity(const Graph& g, const RootedDecomposition& rd, std::size_t x) {
  const auto& bag = rd.pd.bags.at(x);
  if (bag.empty()) return {};
  return vicinity(g, bag, rd.pd.rho);
}

std::vector<VertexSet> balls_around(const Graph& g, const VertexSet& vertices, Distance radius) {
  std::vector<VertexSet> near(g.vertex_count());
  for (Vertex v : vertices) near[static_cast<std::size_t>(v)] = ball(g, v, radius);
  return near;
}

VertexSet intersect(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::size_t state_cap(SolverMode mode, std::size_t k, std::size_t delta) {
  return mode == SolverMode::is ? (delta + 1) * k : k * (delta * delta + 1);
}

// near[v] = ball(v, 2 rho) in IS mode and ball(v, rho) in DS mode, for every v in the ground set.
class StateEnumerator {
 public:
  StateEnumerator(const Graph& g, const RootedDecomposition& rd, std::size_t x, SolverMode mode, std::size_t cap,
                  const StateBudget& budget, const std::vector<VertexSet>& near, VertexSet ground)
      : mode_(mode), x_(x), cap_(cap), budget_(budget), near_(near), bag_(rd.pd.bags.at(x)),
        counter_(g.vertex_count(), 0), in_bag_(g.vertex_count(), 0) {
    family_.mode = mode;
    family_.node = x;
    family_.cap = cap;
    family_.ground = std::move(ground);
    for (Vertex v : bag_) in_bag_[static_cast<std::size_t>(v)] = 1;
  }

  StateFamily run() {
    dfs(0);
    return std::move(family_);
  }

 private:
  void emit() {
    if (family_.states.size() >= budget_.max_states_per_node) {
      throw BudgetExceeded("state family of node " + std::to_string(x_) + " has more than " +
                           std::to_string(budget_.max_states_per_node) + " states");
    }
    family_.states.push_back(chosen_);
  }

  void dfs(std::size_t start) {
    if (++expanded_ > budget_.max_nodes_expanded) {
      throw BudgetExceeded("state enumeration of node " + std::to_string(x_) + " expanded more than " +
                           std::to_string(budget_.max_nodes_expanded) + " nodes with " +
                           std::to_string(family_.states.size()) + " states");
    }
    if (mode_ == SolverMode::is || dominated_ == bag_.size()) emit();
    if (chosen_.size() == cap_) return;
    const auto& ground = family_.ground;
    for (std::size_t i = start; i < ground.size(); ++i) {
      const Vertex v = ground[i];
      if (mode_ == SolverMode::is && counter_[static_cast<std::size_t>(v)] > 0) continue;
      chosen_.push_back(v);
      apply(v, +1);
      dfs(i + 1);
      apply(v, -1);
      chosen_.pop_back();
    }
  }

  void apply(Vertex v, int delta) {
    for (Vertex w : near_[static_cast<std::size_t>(v)]) {
      const auto wi = static_cast<std::size_t>(w);
      if (mode_ == SolverMode::is) {
        counter_[wi] += delta;
      } else if (in_bag_[wi]) {
        if (delta > 0 && counter_[wi]++ == 0) ++dominated_;
        if (delta < 0 && --counter_[wi] == 0) --dominated_;
      }
    }
  }

  SolverMode mode_;
  std::size_t x_;
  std::size_t cap_;
  const StateBudget& budget_;
  const std::vector<VertexSet>& near_;
  const VertexSet& bag_;
  std::vector<int> counter_;
  std::vector<char> in_bag_;
  std::size_t dominated_ = 0;
  std::size_t expanded_ = 0;
  VertexSet chosen_;
  StateFamily family_;
};

bool is_better(SolverMode mode, std::int64_t candidate, std::int64_t incumbent) {
  return mode == SolverMode::is ? candidate > incumbent : candidate < incumbent;
}

}  // namespace

RootedDecomposition::RootedDecomposition(const Graph& g, PartitionDecomposition decomposition, std::size_t root_node)
    : pd(std::move(decomposition)), root(root_node) {
  const auto report = validate_decomposition(g, pd);
  if (!report.ok()) throw InvalidArgument("invalid decomposition: " + report.violations.front());
  node_of = pd.node_of(g.vertex_count());
  if (pd.nodes == 0) return;
  if (root >= pd.nodes) throw InvalidArgument("root node out of range");

  const auto adjacency = pd.adjacency();
  parent.assign(pd.nodes, -1);
  children.assign(pd.nodes, {});
  std::vector<char> seen(pd.nodes, 0);
  std::vector<std::size_t> order{root};
  seen[root] = 1;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const std::size_t x = order[head];
    for (std::size_t y : adjacency[x]) {
      if (seen[y]) continue;
      seen[y] = 1;
      parent[y] = static_cast<std::int64_t>(x);
      children[x].push_back(y);
      order.push_back(y);
    }
  }
  for (auto& c : children) std::sort(c.begin(), c.end());
  post_order.assign(order.rbegin(), order.rend());
}

StateFamily enumerate_states(const Graph& g, const RootedDecomposition& rd, std::size_t x, SolverMode mode,
                             std::size_t k, std::size_t delta, const StateBudget& budget) {
  if (x >= rd.pd.nodes) throw InvalidArgument("node out of range");
  auto ground = node_vicinity(g, rd, x);
  const Distance radius = mode == SolverMode::is ? 2 * rd.pd.rho : rd.pd.rho;
  const auto near = balls_around(g, ground, radius);
  return StateEnumerator(g, rd, x, mode, state_cap(mode, k, delta), budget, near, std::move(ground)).run();
}

bool compatible(const Graph& g, const RootedDecomposition& rd, std::size_t x, const VertexSet& a, std::size_t y,
                const VertexSet& b, SolverMode mode) {
  const auto b_at_x = intersect(b, node_vicinity(g, rd, x));
  const auto a_at_y = intersect(a, node_vicinity(g, rd, y));
  if (b_at_x != a_at_y || intersect(a, b) != a_at_y) return false;
  if (mode == SolverMode::ds) return true;
  VertexSet both;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
  for (Vertex u : both) {
    const auto field = bfs_bounded(g, std::span<const Vertex>(&u, 1), 2 * rd.pd.rho);
    for (Vertex w : both) {
      if (w != u && field.reachable(w)) return false;
    }
  }
  return true;
}

DpTables solve_tables(const Graph& g, const RootedDecomposition& rd, SolverMode mode, const StateBudget& budget) {
  DpTables t;
  t.mode = mode;
  const std::size_t nodes = rd.pd.nodes;
  if (nodes == 0) return t;
  t.k = max_certificate_size(rd.pd);
  t.delta = rd.pd.degree();
  const std::size_t cap = state_cap(mode, t.k, t.delta);
  const Distance radius = mode == SolverMode::is ? 2 * rd.pd.rho : rd.pd.rho;

  std::vector<VertexSet> all(1);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) all[0].push_back(static_cast<Vertex>(v));
  const auto near = balls_around(g, all[0], radius);

  std::vector<VertexSet> vic(nodes);
  t.families.resize(nodes);
  for (std::size_t x = 0; x < nodes; ++x) {
    vic[x] = node_vicinity(g, rd, x);
    t.families[x] = StateEnumerator(g, rd, x, mode, cap, budget, near, vic[x]).run();
  }

  const std::int64_t infeasible = mode == SolverMode::is ? kInfeasibleMax : kInfeasibleMin;
  t.values.resize(nodes);
  t.choice.resize(nodes);
  std::vector<std::uint32_t> stamp(g.vertex_count(), 0);
  std::uint32_t generation = 0;

  for (std::size_t x : rd.post_order) {
    const auto& states = t.families[x].states;
    const auto& kids = rd.children[x];
    t.values[x].assign(states.size(), 0);
    t.choice[x].assign(states.size(), std::vector<std::size_t>(kids.size(), 0));

    std::vector<std::map<VertexSet, std::vector<std::size_t>>> groups(kids.size());
    for (std::size_t c = 0; c < kids.size(); ++c) {
      const auto& child_states = t.families[kids[c]].states;
      for (std::size_t i = 0; i < child_states.size(); ++i) {
        groups[c][intersect(child_states[i], vic[x])].push_back(i);
      }
    }

    for (std::size_t ai = 0; ai < states.size(); ++ai) {
      const auto& a = states[ai];
      std::int64_t total = 0;
      for (std::size_t c = 0; c < kids.size() && total != infeasible; ++c) {
        const std::size_t y = kids[c];
        const auto shared = intersect(a, vic[y]);
        const auto it = groups[c].find(shared);
        std::int64_t best = infeasible;
        std::size_t best_index = 0;
        if (it != groups[c].end()) {
          if (mode == SolverMode::is) {
            ++generation;
            for (Vertex v : a) {
              if (!std::binary_search(shared.begin(), shared.end(), v)) stamp[static_cast<std::size_t>(v)] = generation;
            }
          }
          for (std::size_t bi : it->second) {
            const std::int64_t child_value = t.values[y][bi];
            if (child_value == infeasible) continue;
            const auto& b = t.families[y].states[bi];
            if (mode == SolverMode::is) {
              bool clash = false;
              for (Vertex v : b) {
                if (std::binary_search(shared.begin(), shared.end(), v)) continue;
                for (Vertex w : near[static_cast<std::size_t>(v)]) {
                  if (stamp[static_cast<std::size_t>(w)] == generation) {
                    clash = true;
                    break;
                  }
                }
                if (clash) break;
              }
              if (clash) continue;
            }
            const std::int64_t candidate = static_cast<std::int64_t>(b.size() - shared.size()) + child_value;
            if (best == infeasible || is_better(mode, candidate, best)) {
              best = candidate;
              best_index = bi;
            }
          }
        }
        if (best == infeasible) {
          total = infeasible;
        } else {
          total += best;
          t.choice[x][ai][c] = best_index;
        }
      }
      t.values[x][ai] = total;
    }
  }
  return t;
}

namespace {

SolveResult finish(const RootedDecomposition& rd, const DpTables& t) {
  SolveResult result;
  if (rd.pd.nodes == 0) return result;
  for (const auto& f : t.families) result.total_states += f.states.size();
  const std::int64_t infeasible = t.mode == SolverMode::is ? kInfeasibleMax : kInfeasibleMin;
  const auto& root_states = t.families[rd.root].states;
  std::int64_t best = infeasible;
  std::size_t best_index = 0;
  for (std::size_t i = 0; i < root_states.size(); ++i) {
    const std::int64_t value = t.values[rd.root][i];
    if (value == infeasible) continue;
    const std::int64_t candidate = static_cast<std::int64_t>(root_states[i].size()) + value;
    if (best == infeasible || is_better(t.mode, candidate, best)) {
      best = candidate;
      best_index = i;
    }
  }
  if (best == infeasible) throw std::logic_error("no feasible root state");
  result.value = best;

  std::vector<std::pair<std::size_t, std::size_t>> stack{{rd.root, best_index}};
  while (!stack.empty()) {
    const auto [x, i] = stack.back();
    stack.pop_back();
    const auto& state = t.families[x].states[i];
    result.witness.insert(result.witness.end(), state.begin(), state.end());
    for (std::size_t c = 0; c < rd.children[x].size(); ++c) stack.emplace_back(rd.children[x][c], t.choice[x][i][c]);
  }
  std::sort(result.witness.begin(), result.witness.end());
  result.witness.erase(std::unique(result.witness.begin(), result.witness.end()), result.witness.end());
  return result;
}

}  // namespace

SolveResult solve_dist_is(const Graph& g, const RootedDecomposition& rd, const StateBudget& budget) {
  return finish(rd, solve_tables(g, rd, SolverMode::is, budget));
}

namespace {

using Mask = std::vector<std::uint64_t>;

struct MaskHash {
  std::size_t operator()(const Mask& m) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::uint64_t w : m) h = (h ^ w) * 0xff51afd7ed558ccdULL;
    return static_cast<std::size_t>(h ^ (h >> 32));
  }
};

struct BestState {
  std::int64_t value = 0;
  Mask state;
};

using ProjectionTable = std::unordered_map<Mask, BestState, MaskHash>;

Mask to_mask(const VertexSet& set, std::size_t words) {
  Mask m(words, 0);
  for (Vertex v : set) m[static_cast<std::size_t>(v) / 64] |= std::uint64_t{1} << (static_cast<std::size_t>(v) % 64);
  return m;
}

std::size_t popcount(const Mask& m) {
  std::size_t c = 0;
  for (std::uint64_t w : m) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

void project(const Mask& a, const Mask& onto, Mask& out) {
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] & onto[i];
}

}  // namespace

// Dominating-set compatibility depends only on the projections A ∩ vic(y) onto neighbouring vicinities, so each
// node keeps, per projection onto its parent's vicinity, the best state seen; the families are never stored.
SolveResult solve_dist_ds(const Graph& g, const RootedDecomposition& rd, const StateBudget& budget) {
  SolveResult result;
  const std::size_t nodes = rd.pd.nodes;
  if (nodes == 0) return result;
  const std::size_t n = g.vertex_count();
  const std::size_t words = (n + 63) / 64;
  const std::size_t cap = state_cap(SolverMode::ds, max_certificate_size(rd.pd), rd.pd.degree());

  std::vector<VertexSet> vic(nodes);
  std::vector<Mask> vic_mask(nodes);
  for (std::size_t x = 0; x < nodes; ++x) {
    vic[x] = node_vicinity(g, rd, x);
    vic_mask[x] = to_mask(vic[x], words);
  }
  std::vector<VertexSet> near(n);
  for (std::size_t v = 0; v < n; ++v) near[v] = ball(g, static_cast<Vertex>(v), rd.pd.rho);

  std::vector<ProjectionTable> table(nodes);
  BestState root_best{kInfeasibleMin, {}};
  std::vector<int> counter(n, 0);
  std::vector<char> in_bag(n, 0);

  for (std::size_t x : rd.post_order) {
    const auto& bag = rd.pd.bags[x];
    const auto& kids = rd.children[x];
    const bool is_root = rd.parent[x] < 0;
    const Mask* parent_vic = is_root ? nullptr : &vic_mask[static_cast<std::size_t>(rd.parent[x])];
    for (Vertex v : bag) in_bag[static_cast<std::size_t>(v)] = 1;
    std::fill(counter.begin(), counter.end(), 0);

    Mask chosen(words, 0), key(words, 0);
    std::size_t size = 0, dominated = 0, expanded = 0;
    auto evaluate = [&] {
      ++result.total_states;
      std::int64_t total = 0;
      for (std::size_t y : kids) {
        project(chosen, vic_mask[y], key);
        const auto it = table[y].find(key);
        if (it == table[y].end()) return;
        total += it->second.value;
      }
      total += static_cast<std::int64_t>(size);
      if (is_root) {
        if (root_best.value == kInfeasibleMin || total < root_best.value) root_best = {total, chosen};
        return;
      }
      project(chosen, *parent_vic, key);
      total -= static_cast<std::int64_t>(popcount(key));
      auto [it, inserted] = table[x].try_emplace(key, BestState{total, chosen});
      if (inserted) {
        if (table[x].size() > budget.max_states_per_node) {
          throw BudgetExceeded("state family of node " + std::to_string(x) + " has more than " +
                               std::to_string(budget.max_states_per_node) + " distinct projections");
        }
      } else if (total < it->second.value) {
        it->second = {total, chosen};
      }
    };
    auto apply = [&](Vertex v, int delta) {
      for (Vertex w : near[static_cast<std::size_t>(v)]) {
        const auto wi = static_cast<std::size_t>(w);
        if (!in_bag[wi]) continue;
        if (delta > 0 && counter[wi]++ == 0) ++dominated;
        if (delta < 0 && --counter[wi] == 0) --dominated;
      }
    };
    const auto& ground = vic[x];
    auto dfs = [&](auto&& self, std::size_t start) -> void {
      if (++expanded > budget.max_nodes_expanded) {
        throw BudgetExceeded("state enumeration of node " + std::to_string(x) + " expanded more than " +
                             std::to_string(budget.max_nodes_expanded) + " nodes");
      }
      if (dominated == bag.size()) evaluate();
      if (size == cap) return;
      for (std::size_t i = start; i < ground.size(); ++i) {
        const auto v = static_cast<std::size_t>(ground[i]);
        chosen[v / 64] |= std::uint64_t{1} << (v % 64);
        ++size;
        apply(ground[i], +1);
        self(self, i + 1);
        apply(ground[i], -1);
        --size;
        chosen[v / 64] &= ~(std::uint64_t{1} << (v % 64));
      }
    };
    dfs(dfs, 0);
    for (Vertex v : bag) in_bag[static_cast<std::size_t>(v)] = 0;
  }
  if (root_best.value == kInfeasibleMin) throw std::logic_error("no feasible root state");
  result.value = root_best.value;

  Mask witness(words, 0), key(words, 0);
  std::vector<std::pair<std::size_t, const Mask*>> stack{{rd.root, &root_best.state}};
  while (!stack.empty()) {
    const auto [x, state] = stack.back();
    stack.pop_back();
    for (std::size_t i = 0; i < words; ++i) witness[i] |= (*state)[i];
    for (std::size_t y : rd.children[x]) {
      project(*state, vic_mask[y], key);
      stack.emplace_back(y, &table[y].at(key).state);
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if ((witness[v / 64] >> (v % 64)) & 1) result.witness.push_back(static_cast<Vertex>(v));
  }
  return result;
}

}  // namespace coarsepw
