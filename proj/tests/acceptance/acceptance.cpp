// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include <unistd.h>

#include "cli.hpp"
#include "coarsepw/cover.hpp"
#include "coarsepw/decomp.hpp"
#include "coarsepw/error.hpp"
#include "coarsepw/generators.hpp"
#include "coarsepw/io.hpp"
#include "coarsepw/metric.hpp"
#include "coarsepw/oracle.hpp"
#include "coarsepw/pipeline.hpp"
#include "coarsepw/qiso.hpp"
#include "coarsepw/snappath.hpp"
#include "coarsepw/solver.hpp"
#include "corpus.hpp"

namespace {

using namespace coarsepw;
using Clock = std::chrono::steady_clock;

// Every check below is exact: integer comparisons with zero tolerance.
constexpr std::int64_t kTolerance = 0;
constexpr double kSnapSeconds = 30.0;
constexpr double kSphereSeconds = 120.0;
constexpr double kSolverSeconds = 300.0;
constexpr std::size_t kShortestPathCap = 200;
constexpr int kBallTrials = 1000;
constexpr int kComparisonTrials = 1000;
constexpr std::size_t kSolverMaxN = 24;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void fail(std::string why) {
    pass = false;
    if (failures.size() < 40) failures.push_back(std::move(why));
  }
};

struct Criterion {
  int id;
  std::string name;
  double time_limit;  // seconds; 0 = none
  std::function<Outcome()> run;
};

std::int64_t i64(std::size_t v) { return static_cast<std::int64_t>(v); }

std::vector<Instance> large_corpus() {
  auto out = testing::small_corpus(200);
  for (std::size_t k = 1; k <= 3; ++k) {
    for (Distance rho = 0; rho <= 2; ++rho) {
      for (std::size_t len : {15, 30}) {
        auto inst = make_random_cover_union(k, len, rho, 1000 * k + 10 * static_cast<std::uint64_t>(rho) + len);
        if (inst.graph.vertex_count() <= 200) out.push_back(std::move(inst));
      }
    }
  }
  return out;
}

Outcome snap_bound() {
  Outcome o;
  std::size_t paths = 0;
  std::int64_t worst_slack = std::numeric_limits<std::int64_t>::min();
  for (const auto& inst : testing::snap_corpus()) {
    const auto& g = inst.graph;
    const Snapper snapper(g, inst.cover);
    const std::int64_t bound = 4 * i64(inst.cover.k()) * inst.cover.rho;
    for (Vertex u = 0; u < static_cast<Vertex>(g.vertex_count()); ++u) {
      for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) {
        std::vector<Walk> all;
        try {
          all = oracle::brute_all_shortest_paths(g, u, v, kShortestPathCap);
        } catch (const BudgetExceeded& e) {
          o.fail(inst.name + ": " + e.what());
          continue;
        }
        for (const auto& p : all) {
          ++paths;
          const auto sp = snapper.snap(p);
          const auto walk = concat(sp);
          const std::int64_t diff = std::abs(i64(walk.length()) - i64(p.length()));
          worst_slack = std::max(worst_slack, diff - bound);
          if (diff - bound > kTolerance) o.fail(inst.name + ": length difference " + std::to_string(diff));
          if (walk.start() != u || walk.end() != v) o.fail(inst.name + ": endpoints moved");
          const auto report = validate_raw(g, inst.cover, sp);
          if (!report.ok()) o.fail(inst.name + ": " + report.violations.front());
        }
      }
    }
  }
  o.detail = std::to_string(paths) + " shortest paths, max(||P|-|Q|| - 4rho k) = " + std::to_string(worst_slack);
  return o;
}

Outcome simplification() {
  Outcome o;
  std::size_t paths = 0;
  std::size_t max_level = 0;
  for (const auto& inst : testing::snap_corpus()) {
    const auto& g = inst.graph;
    const Snapper snapper(g, inst.cover);
    const std::size_t k = inst.cover.k();
    for (Vertex u = 0; u < static_cast<Vertex>(g.vertex_count()); ++u) {
      for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) {
        std::vector<Walk> all;
        try {
          all = oracle::brute_all_shortest_paths(g, u, v, kShortestPathCap);
        } catch (const BudgetExceeded& e) {
          o.fail(inst.name + ": " + e.what());
          continue;
        }
        for (const auto& p : all) {
          ++paths;
          const auto raw = snapper.snap(p);
          const auto simple = simplify(raw, k, inst.cover.rho);
          if (concat(simple) != concat(raw)) o.fail(inst.name + ": concat changed");
          const std::size_t level = simple.level.value_or(k + 1);
          max_level = std::max(max_level, level);
          // every merge removes one segment and raises the level by one
          if (level > k || raw.segments.size() - simple.segments.size() != level) {
            o.fail(inst.name + ": level " + std::to_string(level));
          }
          const RhoSequence seq(inst.cover.rho, k);
          for (const auto& r : simple.connectors) {
            if (i64(r.length()) > seq[std::min(level, k)]) o.fail(inst.name + ": long connector");
          }
          for (const auto& q : simple.segments) {
            if (i64(q.length()) <= seq.segment_threshold(std::min(level, k))) o.fail(inst.name + ": short segment");
          }
          const auto report = validate_simplified(g, inst.cover, simple);
          if (!report.ok()) o.fail(inst.name + ": " + report.violations.front());
        }
      }
    }
  }
  o.detail = std::to_string(paths) + " snap-paths simplified, max level " + std::to_string(max_level);
  return o;
}

Outcome ball_covering() {
  Outcome o;
  const auto corpus = large_corpus();
  std::mt19937_64 rng(31337);
  std::size_t max_ratio_num = 0, max_ratio_den = 1;
  for (int trial = 0; trial < kBallTrials; ++trial) {
    const auto& inst = corpus[rng() % corpus.size()];
    const auto& g = inst.graph;
    const auto v = static_cast<Vertex>(rng() % g.vertex_count());
    const std::size_t ell = rng() % 5;
    const auto cert = cover_ball(g, inst.cover, v, ell);
    const std::size_t limit = 2 * inst.cover.k() * (ell + 1);
    if (cert.centers.size() > limit) o.fail(inst.name + ": " + std::to_string(cert.centers.size()) + " centers");
    if (cert.centers.size() * max_ratio_den > max_ratio_num * limit) {
      max_ratio_num = cert.centers.size();
      max_ratio_den = limit;
    }
    const auto target = ball(g, v, static_cast<Distance>(ell) * inst.cover.rho);
    const auto field = bfs(g, cert.centers);
    for (Vertex t : target) {
      if (field[t] > 2 * inst.cover.rho) o.fail(inst.name + ": vertex " + std::to_string(t) + " uncovered");
    }
  }
  o.detail = std::to_string(kBallTrials) + " trials, max |centers| / 2k(l+1) = " + std::to_string(max_ratio_num) +
             "/" + std::to_string(max_ratio_den);
  return o;
}

Outcome sphere_covering() {
  Outcome o;
  std::size_t spheres = 0, pairs = 0, max_classes = 0;
  std::mt19937_64 rng(5);
  for (const auto& inst : large_corpus()) {
    const auto& g = inst.graph;
    const std::size_t k = inst.cover.k();
    const Distance rho = inst.cover.rho;
    const double class_limit = std::pow(2.0 * static_cast<double>(k), static_cast<double>(k + 1));
    const Snapper snapper(g, inst.cover);
    std::vector<Vertex> sources{0};
    for (int i = 0; i < 2; ++i) sources.push_back(static_cast<Vertex>(rng() % g.vertex_count()));
    for (Vertex u : sources) {
      const auto tree = shortest_path_tree(g, u);
      const Distance ecc = *std::max_element(tree.dist.begin(), tree.dist.end());
      for (Distance d = 0; d <= ecc; ++d) {
        ++spheres;
        const auto sc = cover_sphere(g, inst.cover, u, d);
        const auto target = sphere(g, u, d);
        const auto field = bfs(g, sc.certificate.centers);
        for (Vertex t : target) {
          if (field[t] > 2 * rho) o.fail(inst.name + ": sphere vertex " + std::to_string(t) + " uncovered");
        }
        // independent regrouping by type of the canonical snapped paths
        std::map<SnapType, std::vector<std::pair<Vertex, SnapPath>>> classes;
        for (Vertex t : target) {
          auto sp = simplify(snapper.snap(tree.path_to(t)), k, rho);
          classes[type_of(sp)].emplace_back(t, std::move(sp));
        }
        max_classes = std::max(max_classes, classes.size());
        if (static_cast<double>(classes.size()) > class_limit) {
          o.fail(inst.name + ": " + std::to_string(classes.size()) + " type classes");
        }
        if (classes.size() != sc.classes.size()) o.fail(inst.name + ": class count differs from cover_sphere");
        for (const auto& [type, members] : classes) {
          const auto& rep = members.front().second;
          for (const auto& [t, sp] : members) {
            const std::int64_t gamma = std::abs(i64(concat(sp).length()) - i64(concat(rep).length()));
            const auto report = check_same_type_proximity(g, inst.cover, rep, sp, gamma);
            ++pairs;
            if (report.actual - report.bound > kTolerance) {
              o.fail(inst.name + ": endpoint " + std::to_string(t) + " at " + std::to_string(report.actual) +
                     " > " + std::to_string(report.bound));
            }
          }
        }
      }
    }
  }
  o.detail = std::to_string(spheres) + " spheres, " + std::to_string(pairs) + " same-type pairs, max " +
             std::to_string(max_classes) + " type classes";
  return o;
}

Outcome decomposition_certificates() {
  Outcome o;
  std::size_t runs = 0, max_degree = 0, max_bag = 0;
  for (const auto& inst : large_corpus()) {
    ++runs;
    const auto& g = inst.graph;
    const auto pd = build_path_partition(g, inst.cover);
    const auto report = validate_decomposition(g, pd);
    if (!report.ok()) o.fail(inst.name + ": " + report.violations.front());
    const auto rep = main_theorem_certificates(g, inst.cover);
    if (!rep.ok()) o.fail(inst.name + ": " + rep.checks.violations.front());
    const Distance rho_q = std::max<Distance>(inst.cover.rho, 1);
    if (rep.quasi_isometry.m != 3 || rep.quasi_isometry.a != 12 * rho_q || !rep.quasi_isometry.ok()) {
      o.fail(inst.name + ": quasi-isometry certificate");
    }
    if (i64(rep.h_degree) - i64(26 * inst.cover.k()) >= kTolerance) o.fail(inst.name + ": H degree");
    const auto pw = validate_path_decomposition(rep.bundle.h, rep.path_decomposition);
    if (!pw.ok()) o.fail(inst.name + ": " + pw.violations.front());
    max_degree = std::max(max_degree, rep.h_degree);
    max_bag = std::max(max_bag, rep.max_bag);
  }
  o.detail = std::to_string(runs) + " instances, max H degree " + std::to_string(max_degree) + ", max |D_i| " +
             std::to_string(max_bag);
  return o;
}

bool mentions(const std::vector<std::string>& messages, const std::string& needle) {
  return std::any_of(messages.begin(), messages.end(),
                     [&](const std::string& m) { return m.find(needle) != std::string::npos; });
}

Outcome distance_graph() {
  Outcome o;
  std::size_t certs = 0;
  for (const auto& inst : large_corpus()) {
    for (Distance rp : {1, 2, 4}) {
      ++certs;
      const auto bundle = build_distance_graph(inst.graph, rp);
      const auto checks = check_distance_graph(inst.graph, bundle);
      if (!checks.ok()) o.fail(inst.name + ": " + checks.violations.front());
      const auto cert = verify_quasi_isometry(inst.graph, bundle, 3, 3 * rp);
      if (!cert.ok()) o.fail(inst.name + ": (3," + std::to_string(3 * rp) + ") certificate failed");
    }
  }
  // mutation: delete an H edge
  const auto p6 = make_path(6).graph;
  auto cut = build_distance_graph(p6, 1);
  std::vector<std::pair<Vertex, Vertex>> kept{{1, 2}};
  cut.h = Graph(3, kept);
  cut.h_hat = subdivide(cut.h, 3);
  const auto cut_checks = check_distance_graph(p6, cut);
  const auto cut_cert = verify_quasi_isometry(p6, cut, 3, 3);
  if (!mentions(cut_checks.violations, "missing H edge between 0 and 2") || cut_cert.ok()) {
    o.fail("deleted H edge not reported");
  }
  // mutation: corrupt phi
  const auto p21 = make_path(21).graph;
  auto bent = build_distance_graph(p21, 1);
  bent.phi[0] = bent.independent.size() - 1;
  const auto bent_cert = verify_quasi_isometry(p21, bent, 3, 3);
  if (bent_cert.ok() || !mentions(bent_cert.violations, "pair (0,") ||
      !mentions(check_distance_graph(p21, bent).violations, "phi(0)")) {
    o.fail("corrupted phi not reported");
  }
  o.detail = std::to_string(certs) + " certificates for rho' in {1,2,4}; mutations named: '" +
             cut_checks.violations.front() + "', '" + bent_cert.violations.front() + "'";
  return o;
}

struct DpInstance {
  std::string name;
  Graph graph;
  PartitionDecomposition pd;
};

std::vector<DpInstance> dp_corpus() {
  std::vector<DpInstance> out;
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 240; ++trial) {
    const std::size_t n = 3 + rng() % (kSolverMaxN - 2);
    Graph g;
    std::string family;
    switch (trial % 5) {
      case 0: g = make_path(n).graph; family = "path"; break;
      case 1: g = make_cycle(n).graph; family = "cycle"; break;
      case 2: g = testing::random_tree(n, rng); family = "tree"; break;
      case 3: g = testing::random_connected(n, 1 + rng() % 3, rng); family = "sparse"; break;
      default: g = make_grid(4, 2 + rng() % 3).graph; family = "grid"; break;
    }
    const auto rho = static_cast<Distance>(rng() % 3);
    const bool branch = rng() % 2;
    out.push_back({family + " n=" + std::to_string(g.vertex_count()) + " rho=" + std::to_string(rho) +
                       (branch ? " tree" : " path") + " #" + std::to_string(trial),
                   g, testing::random_layered_decomposition(g, rho, rng, branch)});
  }
  for (const auto& inst : testing::small_corpus(kSolverMaxN)) {
    out.push_back({inst.name + " (pipeline)", inst.graph, build_path_partition(inst.graph, inst.cover)});
  }
  return out;
}

Outcome dp_correctness() {
  Outcome o;
  std::size_t solved = 0;
  for (const auto& inst : dp_corpus()) {
    const auto& g = inst.graph;
    const Distance rho = inst.pd.rho;
    const RootedDecomposition rd(g, inst.pd);
    const auto all = testing::all_vertices(g);
    SolveResult is, ds;
    try {
      is = solve_dist_is(g, rd);
      ds = solve_dist_ds(g, rd);
    } catch (const BudgetExceeded& e) {
      o.fail(inst.name + ": " + e.what());
      continue;
    }
    const auto is_oracle = oracle::brute_dist_is(g, all, 2 * rho);
    const auto ds_oracle = oracle::brute_dist_ds(g, all, rho);
    ++solved;
    if (std::abs(is.value - is_oracle) > kTolerance) {
      o.fail(inst.name + ": IS " + std::to_string(is.value) + " vs " + std::to_string(is_oracle));
    }
    if (std::abs(ds.value - ds_oracle) > kTolerance) {
      o.fail(inst.name + ": DS " + std::to_string(ds.value) + " vs " + std::to_string(ds_oracle));
    }
    if (i64(is.witness.size()) != is.value || !testing::is_distance_independent(g, is.witness, 2 * rho)) {
      o.fail(inst.name + ": IS witness");
    }
    if (i64(ds.witness.size()) != ds.value || !testing::dominates_all(g, ds.witness, rho)) {
      o.fail(inst.name + ": DS witness");
    }
  }
  o.detail = std::to_string(solved) + " decompositions with n <= " + std::to_string(kSolverMaxN) +
             " solved in both modes";
  return o;
}

Outcome is_ds_comparison() {
  Outcome o;
  std::mt19937_64 rng(8128);
  std::size_t tight = 0;
  for (int trial = 0; trial < kComparisonTrials; ++trial) {
    const std::size_t n = 4 + rng() % 21;
    const auto g = testing::random_connected(n, rng() % 8, rng);
    VertexSet targets;
    for (std::size_t v = 0; v < n; ++v) {
      if (rng() % 2) targets.push_back(static_cast<Vertex>(v));
    }
    const auto rho = static_cast<Distance>(rng() % 4);
    const int is = oracle::brute_dist_is(g, targets, 2 * rho);
    const int ds = oracle::brute_dist_ds(g, targets, rho);
    if (is - ds > kTolerance) o.fail("trial " + std::to_string(trial) + ": " + std::to_string(is) + " > " +
                                     std::to_string(ds));
    if (is == ds) ++tight;
  }
  o.detail = std::to_string(kComparisonTrials) + " trials, " + std::to_string(tight) + " with equality";
  return o;
}

Outcome pipeline_corollary() {
  Outcome o;
  std::size_t runs = 0;
  for (const auto& inst : testing::small_corpus(kSolverMaxN)) {
    ++runs;
    PipelineResult res;
    try {
      res = pipeline(inst.graph, inst.cover);
    } catch (const BudgetExceeded& e) {
      o.fail(inst.name + ": " + e.what());
      continue;
    }
    const auto all = testing::all_vertices(inst.graph);
    // solver_rho = 2 rho for rho >= 1 and 1 for rho = 0
    const auto is_oracle = oracle::brute_dist_is(inst.graph, all, 2 * res.solver_rho);
    const auto ds_oracle = oracle::brute_dist_ds(inst.graph, all, res.solver_rho);
    if (res.independent.value != is_oracle || res.dominating.value != ds_oracle) {
      o.fail(inst.name + ": pipeline (" + std::to_string(res.independent.value) + "," +
             std::to_string(res.dominating.value) + ") vs oracle (" + std::to_string(is_oracle) + "," +
             std::to_string(ds_oracle) + ")");
    }
  }
  o.detail = std::to_string(runs) + " generated instances with n <= " + std::to_string(kSolverMaxN);
  return o;
}

Outcome determinism() {
  Outcome o;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("coarsepw-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  auto path = [&](const std::string& name) { return (dir / name).string(); };
  auto run = [&](std::vector<std::string> args, const std::string& out_name) {
    args.push_back("--json-out");
    args.push_back(path(out_name));
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    if (code != 0) {
      o.fail("exit " + std::to_string(code) + " for " + args.front() + ": " + err.str());
      return std::string();
    }
    return read_file(path(out_name));
  };

  std::size_t compared = 0;
  for (int round = 0; round < 2; ++round) {
    const std::string tag = std::to_string(round);
    const std::vector<std::vector<std::string>> seeds{{"random-cover-union", "2", "5", "1"},
                                                      {"random-cover-union", "3", "4", "0"}};
    for (std::size_t s = 0; s < seeds.size(); ++s) {
      auto gen = seeds[s];
      gen.insert(gen.begin(), "gen");
      gen.insert(gen.end(), {"--seed", "42", "--graph-out", path("g" + std::to_string(s) + "_" + tag + ".txt"),
                             "--cover-out", path("c" + std::to_string(s) + "_" + tag + ".json")});
      run(gen, "gen" + std::to_string(s) + "_" + tag + ".json");
    }
  }
  std::vector<std::pair<std::string, std::string>> first_round;
  for (int round = 0; round < 2; ++round) {
    const std::string tag = std::to_string(round);
    std::vector<std::pair<std::string, std::string>> outputs;
    for (int s = 0; s < 2; ++s) {
      const std::string g = path("g" + std::to_string(s) + "_" + tag + ".txt");
      const std::string c = path("c" + std::to_string(s) + "_" + tag + ".json");
      const std::string d = path("d" + std::to_string(s) + "_" + tag + ".json");
      const std::string pre = std::to_string(s) + "_" + tag;
      outputs.emplace_back("gen", read_file(path("gen" + std::to_string(s) + "_" + tag + ".json")));
      outputs.emplace_back("graph", read_file(g));
      outputs.emplace_back("cover", read_file(c));
      outputs.emplace_back("cover verify", run({"cover", "verify", "--graph", g, "--cover", c}, "cv" + pre));
      outputs.emplace_back("cover greedy", run({"cover", "greedy", "--graph", g, "--rho", "1"}, "cg" + pre));
      outputs.emplace_back("snap", run({"snap", "--graph", g, "--cover", c, "--from", "0", "--to", "5",
                                        "--simplify"}, "sn" + pre));
      outputs.emplace_back("decompose", run({"decompose", "--graph", g, "--cover", c}, "d" + pre + ".json"));
      outputs.emplace_back("qiso", run({"qiso", "--graph", g, "--cover", c, "--emit-h", path("h" + pre)}, "q" + pre));
      outputs.emplace_back("qiso H", read_file(path("h" + pre)));
      outputs.emplace_back("solve is", run({"solve", "is", "--graph", g, "--decomp", d, "--witness"}, "si" + pre));
      outputs.emplace_back("solve ds", run({"solve", "ds", "--graph", g, "--decomp", d, "--witness"}, "sd" + pre));
      outputs.emplace_back("oracle is", run({"oracle", "is", "--graph", g, "--rho", "1"}, "oi" + pre));
      outputs.emplace_back("oracle ds", run({"oracle", "ds", "--graph", g, "--rho", "1"}, "od" + pre));
      outputs.emplace_back("pipeline", run({"pipeline", "--graph", g, "--cover", c, "--witness"}, "p" + pre));
    }
    if (round == 0) {
      first_round = std::move(outputs);
    } else {
      for (std::size_t i = 0; i < outputs.size(); ++i) {
        ++compared;
        if (outputs[i].second != first_round[i].second) o.fail(outputs[i].first + " output differs between runs");
        if (outputs[i].second.empty()) o.fail(outputs[i].first + " output is empty");
      }
    }
  }
  fs::remove_all(dir);
  o.detail = std::to_string(compared) + " output files byte-identical across two seeded runs";
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "snap-path length bound and raw structure", kSnapSeconds, snap_bound},
      {2, "simplification preserves the walk and meets level bounds", 0, simplification},
      {3, "ball covering with 2k(l+1) centers at radius 2rho", 0, ball_covering},
      {4, "sphere covering: type classes, coverage, same-type proximity", kSphereSeconds, sphere_covering},
      {5, "path-partition, (3,12rho) quasi-isometry, H degree, D_i path-decomposition", 0, decomposition_certificates},
      {6, "distance graph (3,3rho') certificates and mutation detection", 0, distance_graph},
      {7, "dynamic programs equal brute-force oracles", kSolverSeconds, dp_correctness},
      {8, "distIS_2rho <= distDS_rho", 0, is_ds_comparison},
      {9, "pipeline matches oracles", 0, pipeline_corollary},
      {10, "byte-identical JSON across seeded runs", 0, determinism},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.fail(std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (c.time_limit > 0 && seconds > c.time_limit) {
      outcome.fail("took " + std::to_string(seconds) + " s, limit " + std::to_string(c.time_limit) + " s");
    }
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2f s", seconds);
    std::printf("criterion %2d %s  %s: %s (%s)\n", c.id, outcome.pass ? "PASS" : "FAIL", c.name.c_str(),
                outcome.detail.c_str(), timing);
    for (const auto& f : outcome.failures) std::printf("    - %s\n", f.c_str());
    if (!outcome.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
