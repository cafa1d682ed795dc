#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "coarsepw/cover.hpp"
#include "coarsepw/decomp.hpp"
#include "coarsepw/graph.hpp"
#include "coarsepw/report.hpp"

namespace coarsepw {

/// The (I, rho')-distance graph H of G, its subdivision Hhat, and the map phi.
/// H vertex i is I[i]; Hhat keeps those ids and appends 3 rho' - 1 vertices per H edge.
struct DistanceGraphBundle {
  Distance rho_prime = 1;
  VertexSet independent;  // I, ascending
  Graph h;
  Graph h_hat;
  std::vector<std::size_t> phi;  // G vertex -> index into I
};

/// Greedy ascending-id maximal distance-rho' independent set and the derived graphs.
DistanceGraphBundle build_distance_graph(const Graph& g, Distance rho_prime);

/// Rebuilds Hhat from bundle.h (used after editing H).
Graph subdivide(const Graph& h, Distance segment_length);

/// Independence and maximality of I, the <= 3 rho' edge predicate recomputed by BFS,
/// phi nearest-member choice, and the Hhat subdivision.
Report check_distance_graph(const Graph& g, const DistanceGraphBundle& bundle);

struct QuasiIsometryCertificate {
  std::int64_t m = 1;
  std::int64_t a = 0;
  /// max over pairs of dist_Hhat - (m dist_G + a); <= 0 when the upper bound holds.
  std::int64_t max_upper_violation = 0;
  /// max over pairs of (dist_G / m - a) - dist_Hhat; <= 0 when the lower bound holds.
  double max_lower_violation = 0.0;
  bool density_ok = true;
  bool distances_ok = true;
  std::vector<std::string> violations;

  bool ok() const { return density_ok && distances_ok; }
};

/// Exhaustive pairwise check of phi as an (m, a)-quasi-isometry from g to bundle.h_hat.
QuasiIsometryCertificate verify_quasi_isometry(const Graph& g, const DistanceGraphBundle& bundle, std::int64_t m,
                                               std::int64_t a);

struct MainTheoremReport {
  PartitionDecomposition decomposition;
  DistanceGraphBundle bundle;
  QuasiIsometryCertificate quasi_isometry;
  /// D_i = (C_i ∪ ... ∪ C_{i+window}) ∩ I, stored as H indices.
  std::vector<VertexSet> path_decomposition;
  std::size_t window = 0;
  std::size_t h_degree = 0;
  std::size_t degree_limit = 0;  // 26k
  std::size_t max_bag = 0;
  Report checks;

  bool ok() const { return checks.ok(); }
};

/// Path-decomposition checks: every vertex and edge covered, contiguous occurrence.
Report validate_path_decomposition(const Graph& h, const std::vector<VertexSet>& bags);

/// Builds the path-partition, the distance graph with rho' = 4 max(rho, 1), and checks the
/// (3, 3 rho') quasi-isometry, the D_i path-decomposition of H and the H degree bound.
MainTheoremReport main_theorem_certificates(const Graph& g, const GeodesicCover& cover);

}  // namespace coarsepw
