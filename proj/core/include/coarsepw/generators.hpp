#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coarsepw/cover.hpp"
#include "coarsepw/graph.hpp"

namespace coarsepw {

/// A generated graph together with its planted geodesic cover.
struct Instance {
  std::string name;
  Graph graph;
  GeodesicCover cover;
  std::optional<std::uint64_t> seed;
};

Instance make_path(std::size_t n);
/// Needs n >= 3; covered by two arcs at rho = 0.
Instance make_cycle(std::size_t n);
/// Vertex r*w + c; covered by rows 1, 4, 7, ... (and the last row) at rho = 1, or the single row at rho = 0.
Instance make_grid(std::size_t w, std::size_t h);
/// Center 0 and `arms` arms of `len` vertices; arms are paired into geodesics through the center, rho = 0.
Instance make_cross(std::size_t arms, std::size_t len);
/// k disjoint geodesics of length len glued by connectors of length at most 2 rho + 1, plus extra
/// connectors that keep every planted path geodesic and pendant hairs of length at most rho.
Instance make_random_cover_union(std::size_t k, std::size_t len, Distance rho, std::uint64_t seed);

/// Parses `path n`, `cycle n`, `grid w h`, `cross arms len` or `random-cover-union k len rho seed`.
/// Throws InvalidArgument on unknown families or malformed parameters.
Instance generate(const std::vector<std::string>& spec);

}  // namespace coarsepw
