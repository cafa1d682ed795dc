#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coarsepw/cover.hpp"
#include "coarsepw/graph.hpp"
#include "coarsepw/metric.hpp"
#include "coarsepw/report.hpp"

namespace coarsepw {

/// rho_0 = 2 rho + 1 and rho_i = (2k + 5) rho_{i-1} for i = 1..k.
class RhoSequence {
 public:
  RhoSequence(Distance rho, std::size_t k);

  std::int64_t operator[](std::size_t level) const { return values_.at(level); }
  std::size_t k() const { return k_; }
  Distance rho() const { return rho_; }
  /// Segment-length threshold (2k + 3) rho_level of an level-simplified snap-path.
  std::int64_t segment_threshold(std::size_t level) const;

 private:
  Distance rho_;
  std::size_t k_;
  std::vector<std::int64_t> values_;
};

enum class Direction : std::uint8_t { forward, backward };

const char* to_string(Direction d);

/// A Q_i piece: the slice [first, last] of cover geodesic `geodesic`, walked in `direction`.
struct Segment {
  std::size_t geodesic = 0;
  Direction direction = Direction::forward;
  std::size_t first = 0;
  std::size_t last = 0;
  Walk walk;

  std::size_t length() const { return walk.length(); }
};

/// (R_0, Q_1, R_1, ..., Q_k', R_k'). `level` is empty for raw snap-paths.
struct SnapPath {
  std::vector<Walk> connectors;
  std::vector<Segment> segments;
  std::optional<std::size_t> level;

  std::size_t visited() const { return segments.size(); }
};

/// R_0 · Q_1 · R_1 · ... ; throws InvalidArgument on an endpoint mismatch.
Walk concat(const SnapPath& sp);

struct SnapType {
  std::vector<std::pair<std::size_t, Direction>> visits;
  std::size_t level = 0;

  friend auto operator<=>(const SnapType&, const SnapType&) = default;
  friend bool operator==(const SnapType&, const SnapType&) = default;
};

std::string to_string(const SnapType& t);

/// Nearest cover vertex for every graph vertex. Ties go to the smallest geodesic
/// index, then the smallest position along that geodesic.
struct CoverProjection {
  std::vector<std::size_t> geodesic;
  std::vector<std::size_t> position;
  std::vector<Distance> dist;

  Vertex nearest_vertex(const GeodesicCover& cover, Vertex v) const;
};

/// Throws InvalidArgument when the cover is not valid for g.
CoverProjection project_onto_cover(const Graph& g, const GeodesicCover& cover);

/// Snaps shortest paths onto a fixed cover. Validates the cover once.
class Snapper {
 public:
  Snapper(const Graph& g, const GeodesicCover& cover);

  /// Raw snap-path with the endpoints of p; throws InvalidArgument if p is not a geodesic.
  SnapPath snap(const Walk& p) const;

  const CoverProjection& projection() const { return projection_; }

 private:
  const Graph& graph_;
  const GeodesicCover& cover_;
  CoverProjection projection_;
};

SnapPath snap(const Graph& g, const GeodesicCover& cover, const Walk& p);

/// Merges short segments (lowest index first) until the level bounds hold.
/// The concatenated walk is preserved vertex for vertex.
SnapPath simplify(const SnapPath& raw, std::size_t k, Distance rho);

/// Throws InvalidArgument on a raw snap-path.
SnapType type_of(const SnapPath& sp);

/// Structural checks of the raw definition (piece endpoints, geodesic slices,
/// one segment per geodesic, connector lengths).
Report validate_raw(const Graph& g, const GeodesicCover& cover, const SnapPath& sp);

/// Checks of the simplified definition at sp.level.
Report validate_simplified(const Graph& g, const GeodesicCover& cover, const SnapPath& sp);

/// Which segment-length thresholds every segment of a simplified snap-path exceeds.
struct ThresholdFlags {
  bool above_2k_plus_3 = true;
  bool above_2k_plus_2 = true;
  bool above_k_plus_2 = true;
};

ThresholdFlags segment_thresholds(const SnapPath& sp, std::size_t k, Distance rho);

struct ProximityReport {
  std::int64_t bound = 0;
  Distance actual = 0;
  bool ok = false;
};

/// gamma + k (4 k rho + 2 rho_l + 2 k rho_l) + (6 k + 4) rho_l.
std::int64_t same_type_bound(std::size_t k, Distance rho, std::size_t level, std::int64_t gamma);

/// Distance between the ends of two same-start, same-type simplified snap-paths versus
/// the proximity bound. Throws InvalidArgument naming the failed precondition.
ProximityReport check_same_type_proximity(const Graph& g, const GeodesicCover& cover, const SnapPath& a,
                                          const SnapPath& b, std::int64_t gamma);

}  // namespace coarsepw
