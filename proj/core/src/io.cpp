#include "coarsepw/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "coarsepw/error.hpp"
#include "json.hpp"

namespace coarsepw {
namespace {

using Json = nlohmann::ordered_json;

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

template <typename T>
T field(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad field '") + key + "': " + e.what());
  }
}

Json vertices(const VertexSet& vs) { return Json(vs); }

}  // namespace

std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ParseError("cannot open " + file.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Graph read_graph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      ++line_no;
      if (out.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  auto fail = [&](const std::string& why) -> ParseError {
    return ParseError("line " + std::to_string(line_no) + ": " + why);
  };
  auto two_ints = [&](const std::string& text, long long& a, long long& b) {
    std::istringstream fields(text);
    std::string rest;
    return static_cast<bool>(fields >> a >> b) && !(fields >> rest);
  };

  long long n = 0, m = 0;
  if (!next_line(line)) throw ParseError("empty graph file");
  if (!two_ints(line, n, m) || n < 0 || m < 0) throw fail("expected header 'n m'");
  if (n > std::numeric_limits<Vertex>::max()) throw fail("vertex count too large");

  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<std::vector<Vertex>> seen(static_cast<std::size_t>(n));
  for (long long i = 0; i < m; ++i) {
    if (!next_line(line)) throw ParseError("expected " + std::to_string(m) + " edges, found " + std::to_string(i));
    long long u = 0, v = 0;
    if (!two_ints(line, u, v)) throw fail("expected edge 'u v'");
    if (u < 0 || v < 0 || u >= n || v >= n) throw fail("vertex id out of range");
    if (u == v) throw fail("self-loop at vertex " + std::to_string(u));
    auto a = static_cast<Vertex>(std::min(u, v));
    auto b = static_cast<Vertex>(std::max(u, v));
    auto& list = seen[static_cast<std::size_t>(a)];
    if (std::find(list.begin(), list.end(), b) != list.end()) {
      throw fail("duplicate edge " + std::to_string(a) + " " + std::to_string(b));
    }
    list.push_back(b);
    edges.emplace_back(a, b);
  }
  if (next_line(line)) throw fail("more edges than announced in the header");
  return Graph(static_cast<std::size_t>(n), edges);
}

Graph load_graph(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ParseError("cannot open " + file.string());
  try {
    return read_graph(in);
  } catch (const ParseError& e) {
    throw ParseError(file.string() + ": " + e.what());
  }
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

std::string cover_to_json(const GeodesicCover& cover) {
  Json paths = Json::array();
  for (const auto& p : cover.paths) paths.push_back(p.vertices);
  Json out;
  out["rho"] = cover.rho;
  out["paths"] = std::move(paths);
  return out.dump();
}

GeodesicCover cover_from_json(std::string_view text) {
  const auto doc = parse_json(text);
  GeodesicCover cover;
  cover.rho = field<Distance>(doc, "rho");
  if (cover.rho < 0) throw ParseError("negative rho");
  for (auto& p : field<std::vector<std::vector<Vertex>>>(doc, "paths")) {
    if (p.empty()) throw ParseError("empty cover path");
    cover.paths.emplace_back(std::move(p));
  }
  return cover;
}

GeodesicCover load_cover(const std::filesystem::path& file) { return cover_from_json(read_file(file)); }

std::string decomposition_to_json(const PartitionDecomposition& pd) {
  Json edges = Json::array();
  for (const auto& [a, b] : pd.edges) edges.push_back({a, b});
  Json bags = Json::array();
  for (const auto& bag : pd.bags) bags.push_back(vertices(bag));
  Json certs = Json::array();
  for (const auto& c : pd.certificates) {
    Json cert;
    cert["centers"] = vertices(c.centers);
    cert["radius"] = c.radius;
    certs.push_back(std::move(cert));
  }
  Json out;
  out["rho"] = pd.rho;
  out["tree"] = {{"nodes", pd.nodes}, {"edges", std::move(edges)}};
  out["bags"] = std::move(bags);
  out["certificates"] = std::move(certs);
  return out.dump();
}

PartitionDecomposition decomposition_from_json(std::string_view text) {
  const auto doc = parse_json(text);
  PartitionDecomposition pd;
  pd.rho = field<Distance>(doc, "rho");
  const auto tree = field<Json>(doc, "tree");
  pd.nodes = field<std::size_t>(tree, "nodes");
  pd.edges = field<std::vector<std::pair<std::size_t, std::size_t>>>(tree, "edges");
  pd.bags = field<std::vector<VertexSet>>(doc, "bags");
  for (auto& bag : pd.bags) std::sort(bag.begin(), bag.end());
  const auto certs = field<Json>(doc, "certificates");
  if (!certs.is_array() || certs.size() != pd.bags.size()) throw ParseError("expected one certificate per bag");
  for (std::size_t i = 0; i < certs.size(); ++i) {
    CoverCertificate cert;
    cert.centers = field<VertexSet>(certs[i], "centers");
    std::sort(cert.centers.begin(), cert.centers.end());
    cert.radius = field<Distance>(certs[i], "radius");
    cert.target = pd.bags[i];
    pd.certificates.push_back(std::move(cert));
  }
  return pd;
}

PartitionDecomposition load_decomposition(const std::filesystem::path& file) {
  return decomposition_from_json(read_file(file));
}

std::string solve_result_to_json(const SolveResult& result, bool with_witness) {
  Json out;
  out["value"] = result.value;
  if (with_witness) out["witness"] = vertices(result.witness);
  return out.dump();
}

}  // namespace coarsepw
