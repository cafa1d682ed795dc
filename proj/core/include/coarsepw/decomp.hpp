#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "coarsepw/cover.hpp"
#include "coarsepw/graph.hpp"
#include "coarsepw/oracle.hpp"
#include "coarsepw/report.hpp"
#include "coarsepw/snappath.hpp"

namespace coarsepw {

/// Witness that `target` is covered by radius-`radius` balls around `centers`.
struct CoverCertificate {
  VertexSet centers;
  Distance radius = 0;
  VertexSet target;

  friend bool operator==(const CoverCertificate&, const CoverCertificate&) = default;
};

/// Vertices of `cert.target` farther than `cert.radius` from every center.
VertexSet uncovered_by(const Graph& g, const CoverCertificate& cert);

/// Drops centers (highest id first) whose removal keeps the target covered.
void prune_certificate(const Graph& g, CoverCertificate& cert);

/// Greedy set-cover certificate for an arbitrary target; centers may lie anywhere in g.
CoverCertificate greedy_certificate(const Graph& g, std::span<const Vertex> target, Distance radius);

/// Covers ball(v, ell * rho) at radius 2 rho with at most 2k(ell + 1) centers: per cover
/// geodesic, a greedy maximal distance-rho independent subset of its vertices in
/// ball(v, (ell + 1) rho).
CoverCertificate cover_ball(const Graph& g, const GeodesicCover& cover, Vertex v, std::size_t ell);

/// Endpoints of the sphere whose snapped, simplified canonical paths share one type.
struct TypeClass {
  SnapType type;
  Vertex representative = 0;
  VertexSet members;
  /// Radius of the ball around the representative that is handed to cover_ball.
  std::int64_t cover_radius = 0;
  /// Largest representative-member distance and the tightest proximity bound it was checked against.
  Distance max_distance = 0;
  std::int64_t max_bound = 0;
  bool proximity_ok = true;
};

struct SphereCover {
  CoverCertificate certificate;
  std::vector<TypeClass> classes;
  /// Center count before pruning.
  std::size_t raw_center_count = 0;
};

/// Covers sphere(u, d) at radius 2 rho by grouping snap-path types of the canonical
/// shortest paths from u. Throws InvalidArgument on an invalid cover.
SphereCover cover_sphere(const Graph& g, const GeodesicCover& cover, Vertex u, Distance d);

/// Partition of V(G) into bags on a tree; bags with distance <= rho lie on equal or adjacent nodes.
struct PartitionDecomposition {
  Distance rho = 1;
  std::size_t nodes = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<VertexSet> bags;
  std::vector<CoverCertificate> certificates;

  std::size_t width() const;
  std::size_t degree() const;
  std::vector<std::vector<std::size_t>> adjacency() const;
  /// Bag index of every vertex; throws InvalidArgument when bags do not partition 0..n-1.
  std::vector<std::size_t> node_of(std::size_t n) const;

  friend bool operator==(const PartitionDecomposition&, const PartitionDecomposition&) = default;
};

struct PathPartitionBuild {
  PartitionDecomposition decomposition;
  std::vector<std::size_t> raw_certificate_sizes;
  std::size_t max_type_classes = 0;
};

/// BFS annuli of thickness max(2 rho, 1) from the lowest vertex of each component,
/// arranged on a path, with per-bag certificates at radius 2 rho.
PathPartitionBuild build_path_partition_detailed(const Graph& g, const GeodesicCover& cover);
PartitionDecomposition build_path_partition(const Graph& g, const GeodesicCover& cover);

/// Attaches greedy certificates to the given bag tree.
PartitionDecomposition make_decomposition(const Graph& g, Distance rho, std::vector<VertexSet> bags,
                                          std::vector<std::pair<std::size_t, std::size_t>> edges);

/// Partition, tree shape, distance-rho adjacency and certificate coverage.
Report validate_decomposition(const Graph& g, const PartitionDecomposition& pd);

/// Exact minimum number of radius-rho balls covering each bag.
std::vector<int> exact_width(const Graph& g, const PartitionDecomposition& pd, const oracle::Budget& budget = {});

}  // namespace coarsepw
