#include "cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "coarsepw/cover.hpp"
#include "coarsepw/decomp.hpp"
#include "coarsepw/error.hpp"
#include "coarsepw/generators.hpp"
#include "coarsepw/io.hpp"
#include "coarsepw/oracle.hpp"
#include "coarsepw/pipeline.hpp"
#include "coarsepw/qiso.hpp"
#include "coarsepw/snappath.hpp"
#include "coarsepw/solver.hpp"
#include "json.hpp"

namespace coarsepw::cli {
namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string graph;
  std::string cover;
  std::optional<Distance> rho;
  std::optional<std::uint64_t> seed;
  std::string json_out;

  std::vector<std::string> gen_spec;
  std::string graph_out;
  std::string cover_out;
  std::string mode;
  std::string decomp;
  bool witness = false;
  std::optional<Vertex> from;
  std::optional<Vertex> to;
  bool simplify = false;
  bool exact_width = false;
  std::string emit_h;
  std::optional<Distance> rho_prime;
  std::string set;
};

const std::string& require(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string(flag) + " is required");
  return value;
}

template <typename T>
T require(const std::optional<T>& value, const char* flag) {
  if (!value) throw UsageError(std::string(flag) + " is required");
  return *value;
}

Json walk_json(const Walk& w) { return Json(w.vertices); }

Json report_json(const Report& r) { return Json(r.violations); }

Json snap_json(const SnapPath& sp) {
  Json connectors = Json::array();
  for (const auto& r : sp.connectors) connectors.push_back(walk_json(r));
  Json segments = Json::array();
  for (const auto& q : sp.segments) {
    Json s;
    s["geodesic"] = q.geodesic;
    s["direction"] = to_string(q.direction);
    s["first"] = q.first;
    s["last"] = q.last;
    s["walk"] = walk_json(q.walk);
    segments.push_back(std::move(s));
  }
  Json out;
  out["connectors"] = std::move(connectors);
  out["segments"] = std::move(segments);
  out["level"] = sp.level ? Json(*sp.level) : Json(nullptr);
  return out;
}

Json type_json(const SnapType& t) {
  Json visits = Json::array();
  for (const auto& [geodesic, direction] : t.visits) visits.push_back({geodesic, to_string(direction)});
  return Json{{"visits", std::move(visits)}, {"level", t.level}};
}

int cmd_gen(const Options& o, Json& result) {
  auto spec = o.gen_spec;
  if (!spec.empty() && spec.front() == "random-cover-union" && spec.size() == 4) {
    spec.push_back(std::to_string(require(o.seed, "--seed")));
  }
  const auto inst = generate(spec);
  if (!o.graph_out.empty()) {
    std::ofstream f(o.graph_out);
    if (!f) throw ParseError("cannot write " + o.graph_out);
    write_graph(f, inst.graph);
  }
  if (!o.cover_out.empty()) {
    std::ofstream f(o.cover_out);
    if (!f) throw ParseError("cannot write " + o.cover_out);
    f << cover_to_json(inst.cover) << '\n';
  }
  Json edges = Json::array();
  for (const auto& [u, v] : inst.graph.edges()) edges.push_back({u, v});
  result["instance"] = inst.name;
  result["seed"] = inst.seed ? Json(*inst.seed) : Json(nullptr);
  result["n"] = inst.graph.vertex_count();
  result["m"] = inst.graph.edge_count();
  result["edges"] = std::move(edges);
  result["cover"] = Json::parse(cover_to_json(inst.cover));
  return kOk;
}

int cmd_cover(const Options& o, Json& result) {
  const auto g = load_graph(require(o.graph, "--graph"));
  if (o.mode == "greedy") {
    result = Json::parse(cover_to_json(greedy_cover(g, require(o.rho, "--rho"))));
    return kOk;
  }
  const auto cover = load_cover(require(o.cover, "--cover"));
  const auto report = verify_cover(g, cover);
  result["ok"] = report.ok();
  result["k"] = cover.k();
  result["rho"] = cover.rho;
  result["non_geodesic_paths"] = report.non_geodesic_paths;
  result["uncovered"] = report.uncovered;
  result["violations"] = report_json(report);
  return report.ok() ? kOk : kValidationFailure;
}

int cmd_snap(const Options& o, Json& result) {
  const auto g = load_graph(require(o.graph, "--graph"));
  const auto cover = load_cover(require(o.cover, "--cover"));
  const Vertex u = require(o.from, "--from");
  const Vertex v = require(o.to, "--to");
  if (!g.contains(u) || !g.contains(v)) throw InvalidArgument("--from/--to out of range");
  const auto path = shortest_path(g, u, v);
  auto sp = snap(g, cover, path);
  Report report = validate_raw(g, cover, sp);
  if (o.simplify) {
    sp = simplify(sp, cover.k(), cover.rho);
    report = validate_simplified(g, cover, sp);
  }
  const auto walk = concat(sp);
  const auto diff = static_cast<std::int64_t>(walk.length()) - static_cast<std::int64_t>(path.length());
  result["path"] = walk_json(path);
  result["snap_path"] = snap_json(sp);
  result["concat"] = walk_json(walk);
  result["length_difference"] = diff;
  result["length_bound"] = 4 * static_cast<std::int64_t>(cover.rho) * static_cast<std::int64_t>(cover.k());
  result["type"] = sp.level ? type_json(type_of(sp)) : Json(nullptr);
  result["violations"] = report_json(report);
  return report.ok() ? kOk : kValidationFailure;
}

int cmd_decompose(const Options& o, Json& result) {
  const auto g = load_graph(require(o.graph, "--graph"));
  const auto cover = load_cover(require(o.cover, "--cover"));
  const auto build = build_path_partition_detailed(g, cover);
  const auto& pd = build.decomposition;
  const auto report = validate_decomposition(g, pd);
  result = Json::parse(decomposition_to_json(pd));
  Json summary;
  summary["width"] = pd.width();
  summary["raw_certificate_sizes"] = build.raw_certificate_sizes;
  summary["max_type_classes"] = build.max_type_classes;
  if (o.exact_width) summary["exact_width"] = exact_width(g, pd);
  summary["violations"] = report_json(report);
  result["summary"] = std::move(summary);
  return report.ok() ? kOk : kValidationFailure;
}

Json certificate_json(const QuasiIsometryCertificate& q) {
  Json out;
  out["m"] = q.m;
  out["a"] = q.a;
  out["max_upper_violation"] = q.max_upper_violation;
  out["max_lower_violation"] = q.max_lower_violation;
  out["density_ok"] = q.density_ok;
  out["distances_ok"] = q.distances_ok;
  out["violations"] = q.violations;
  return out;
}

void emit_h(const std::string& file, const Graph& h) {
  if (file.empty()) return;
  std::ofstream f(file);
  if (!f) throw ParseError("cannot write " + file);
  write_graph(f, h);
}

int cmd_qiso(const Options& o, Json& result) {
  const auto g = load_graph(require(o.graph, "--graph"));
  if (o.rho_prime) {
    const auto bundle = build_distance_graph(g, *o.rho_prime);
    const auto checks = check_distance_graph(g, bundle);
    const auto cert = verify_quasi_isometry(g, bundle, 3, 3 * static_cast<std::int64_t>(*o.rho_prime));
    emit_h(o.emit_h, bundle.h);
    const bool ok = checks.ok() && cert.ok();
    result["ok"] = ok;
    result["rho_prime"] = bundle.rho_prime;
    result["independent"] = bundle.independent;
    result["h"] = {{"n", bundle.h.vertex_count()}, {"m", bundle.h.edge_count()}, {"max_degree", bundle.h.max_degree()}};
    result["quasi_isometry"] = certificate_json(cert);
    result["violations"] = report_json(checks);
    return ok ? kOk : kValidationFailure;
  }
  const auto cover = load_cover(require(o.cover, "--cover"));
  const auto rep = main_theorem_certificates(g, cover);
  emit_h(o.emit_h, rep.bundle.h);
  result["ok"] = rep.ok();
  result["rho_prime"] = rep.bundle.rho_prime;
  result["independent"] = rep.bundle.independent;
  result["h"] = {{"n", rep.bundle.h.vertex_count()}, {"m", rep.bundle.h.edge_count()}};
  result["h_degree"] = rep.h_degree;
  result["degree_limit"] = rep.degree_limit;
  result["quasi_isometry"] = certificate_json(rep.quasi_isometry);
  result["window"] = rep.window;
  result["max_bag"] = rep.max_bag;
  result["path_decomposition"] = rep.path_decomposition;
  result["violations"] = report_json(rep.checks);
  return rep.ok() ? kOk : kValidationFailure;
}

int cmd_solve(const Options& o, Json& result) {
  const auto g = load_graph(require(o.graph, "--graph"));
  const RootedDecomposition rd(g, load_decomposition(require(o.decomp, "--decomp")));
  const auto solved = o.mode == "is" ? solve_dist_is(g, rd) : solve_dist_ds(g, rd);
  result = Json::parse(solve_result_to_json(solved, o.witness));
  return kOk;
}

VertexSet parse_set(const std::string& text, const Graph& g) {
  VertexSet out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    long value = 0;
    try {
      value = std::stol(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || value < 0 || !g.contains(static_cast<Vertex>(value))) {
      throw InvalidArgument("bad vertex '" + item + "' in --set");
    }
    out.push_back(static_cast<Vertex>(value));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int cmd_oracle(const Options& o, Json& result) {
  const auto g = load_graph(require(o.graph, "--graph"));
  const Distance rho = require(o.rho, "--rho");
  VertexSet targets;
  if (o.set.empty()) {
    for (std::size_t v = 0; v < g.vertex_count(); ++v) targets.push_back(static_cast<Vertex>(v));
  } else {
    targets = parse_set(o.set, g);
  }
  const bool is = o.mode == "is";
  const Distance distance = is ? 2 * rho : rho;
  result["problem"] = o.mode;
  result["distance"] = distance;
  result["value"] = is ? oracle::brute_dist_is(g, targets, distance) : oracle::brute_dist_ds(g, targets, distance);
  return kOk;
}

int cmd_pipeline(const Options& o, Json& result) {
  const auto g = load_graph(require(o.graph, "--graph"));
  const auto cover = load_cover(require(o.cover, "--cover"));
  const auto res = pipeline(g, cover);
  auto part = [&](const SolveResult& r, Distance distance) {
    Json j = Json::parse(solve_result_to_json(r, o.witness));
    j["distance"] = distance;
    return j;
  };
  result["rho"] = cover.rho;
  result["solver_rho"] = res.solver_rho;
  result["width"] = res.decomposition.width();
  result["dist_is"] = part(res.independent, 2 * res.solver_rho);
  result["dist_ds"] = part(res.dominating, res.solver_rho);
  return kOk;
}

void write_result(const Options& o, const Json& result, std::ostream& out) {
  const std::string text = result.dump(2) + "\n";
  if (o.json_out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.json_out, std::ios::binary);
  if (!f) throw ParseError("cannot write " + o.json_out);
  f << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Coarse path-decompositions of graphs with small geodesic covers", "coarsepw"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default(false);

  const auto add_globals = [&o](CLI::App* cmd) {
    cmd->add_option("--graph", o.graph, "Graph file (`n m` then `u v` lines)");
    cmd->add_option("--cover", o.cover, "Geodesic cover JSON");
    cmd->add_option("--rho", o.rho, "Radius")->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", o.seed, "Random seed");
    cmd->add_option("--json-out", o.json_out, "Write the JSON result to this file");
  };

  auto* gen = app.add_subcommand("gen", "Generate an instance: path n | cycle n | grid w h | cross arms len | "
                                        "random-cover-union k len rho [seed]");
  gen->add_option("spec", o.gen_spec, "Family and parameters")->required();
  gen->add_option("--graph-out", o.graph_out, "Write the graph here");
  gen->add_option("--cover-out", o.cover_out, "Write the planted cover here");

  auto* cover = app.add_subcommand("cover", "Verify a cover or build one greedily");
  cover->add_option("mode", o.mode)->required()->check(CLI::IsMember({"verify", "greedy"}));

  auto* snapc = app.add_subcommand("snap", "Snap the canonical shortest path between two vertices");
  snapc->add_option("--from", o.from)->required();
  snapc->add_option("--to", o.to)->required();
  snapc->add_flag("--simplify", o.simplify, "Simplify the snap-path");

  auto* decompose = app.add_subcommand("decompose", "Build the distance-2rho path-partition-decomposition");
  decompose->add_flag("--exact-width", o.exact_width, "Compute exact per-bag widths by brute force");

  auto* qiso = app.add_subcommand("qiso", "Distance graph, quasi-isometry and path-decomposition certificates");
  qiso->add_option("--emit-h", o.emit_h, "Write H in the graph text format");
  qiso->add_option("--rho-prime", o.rho_prime, "Check only the distance graph for this radius")
      ->check(CLI::PositiveNumber);

  auto* solve = app.add_subcommand("solve", "Run the dynamic program over a decomposition");
  solve->add_option("mode", o.mode)->required()->check(CLI::IsMember({"is", "ds"}));
  solve->add_option("--decomp", o.decomp, "Decomposition JSON")->required();
  solve->add_flag("--witness", o.witness, "Include the witness set");

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force distIS_{2rho} or distDS_rho");
  oracle_cmd->add_option("mode", o.mode)->required()->check(CLI::IsMember({"is", "ds"}));
  oracle_cmd->add_option("--set", o.set, "Comma-separated target vertices (default: all)");

  auto* pipe = app.add_subcommand("pipeline", "Decompose, then solve distIS_{4rho} and distDS_{2rho}");
  pipe->add_flag("--witness", o.witness, "Include witness sets");

  for (auto* cmd : {gen, cover, snapc, decompose, qiso, solve, oracle_cmd, pipe}) add_globals(cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  }

  try {
    Json result;
    int code = kOk;
    if (gen->parsed()) code = cmd_gen(o, result);
    else if (cover->parsed()) code = cmd_cover(o, result);
    else if (snapc->parsed()) code = cmd_snap(o, result);
    else if (decompose->parsed()) code = cmd_decompose(o, result);
    else if (qiso->parsed()) code = cmd_qiso(o, result);
    else if (solve->parsed()) code = cmd_solve(o, result);
    else if (oracle_cmd->parsed()) code = cmd_oracle(o, result);
    else code = cmd_pipeline(o, result);
    write_result(o, result, out);
    return code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kBudgetExceeded;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const InvalidArgument& e) {
    err << "invalid: " << e.what() << '\n';
    return kValidationFailure;
  }
}

}  // namespace coarsepw::cli
