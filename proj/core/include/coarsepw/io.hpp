#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "coarsepw/cover.hpp"
#include "coarsepw/decomp.hpp"
#include "coarsepw/graph.hpp"
#include "coarsepw/solver.hpp"

namespace coarsepw {

/// Text format: `n m` followed by m lines `u v`. Throws ParseError with the offending line number.
Graph read_graph(std::istream& in);
Graph load_graph(const std::filesystem::path& file);
void write_graph(std::ostream& out, const Graph& g);

/// `{"rho": r, "paths": [[...], ...]}`
std::string cover_to_json(const GeodesicCover& cover);
GeodesicCover cover_from_json(std::string_view text);
GeodesicCover load_cover(const std::filesystem::path& file);

/// `{"rho", "tree": {"nodes", "edges"}, "bags", "certificates": [{"centers", "radius"}]}`.
/// Certificate targets are restored from the bags.
std::string decomposition_to_json(const PartitionDecomposition& pd);
PartitionDecomposition decomposition_from_json(std::string_view text);
PartitionDecomposition load_decomposition(const std::filesystem::path& file);

/// `{"value": v, "witness": [...]}`; the witness is omitted unless requested.
std::string solve_result_to_json(const SolveResult& result, bool with_witness);

std::string read_file(const std::filesystem::path& file);

}  // namespace coarsepw
