#include "coarsepw/snappath.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "coarsepw/error.hpp"

namespace coarsepw {
namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw InvalidArgument("rho sequence overflows 64-bit integers");
  return out;
}

std::string piece_name(const char* kind, std::size_t i) { return std::string(kind) + "_" + std::to_string(i); }

// Shared by validate_raw and validate_simplified: everything except the length bounds.
void check_structure(const Graph& g, const GeodesicCover& cover, const SnapPath& sp, Report& report) {
  if (sp.connectors.size() != sp.segments.size() + 1) {
    report.add("expected " + std::to_string(sp.segments.size() + 1) + " connectors, found " +
               std::to_string(sp.connectors.size()));
    return;
  }
  for (std::size_t i = 0; i < sp.connectors.size(); ++i) {
    if (!is_walk_in(g, sp.connectors[i])) report.add(piece_name("R", i) + " is not a walk in the graph");
  }
  std::set<std::size_t> used;
  for (std::size_t i = 0; i < sp.segments.size(); ++i) {
    const auto& seg = sp.segments[i];
    const std::string name = piece_name("Q", i + 1);
    if (seg.geodesic >= cover.k()) {
      report.add(name + " names geodesic " + std::to_string(seg.geodesic) + " outside the cover");
      continue;
    }
    if (!used.insert(seg.geodesic).second) {
      report.add(name + " reuses geodesic " + std::to_string(seg.geodesic));
    }
    const Walk& host = cover.paths[seg.geodesic];
    if (seg.first >= host.vertices.size() || seg.last >= host.vertices.size()) {
      report.add(name + " positions out of range");
      continue;
    }
    if (seg.walk != host.slice(seg.first, seg.last)) report.add(name + " is not the declared geodesic slice");
    const Direction expected = seg.first <= seg.last ? Direction::forward : Direction::backward;
    if (seg.direction != expected) report.add(name + " direction does not match its positions");
    if (sp.connectors[i].empty() || seg.walk.empty() || sp.connectors[i].end() != seg.walk.start()) {
      report.add("end(" + piece_name("R", i) + ") != start(" + name + ")");
    }
    if (sp.connectors[i + 1].empty() || seg.walk.empty() || seg.walk.end() != sp.connectors[i + 1].start()) {
      report.add("end(" + name + ") != start(" + piece_name("R", i + 1) + ")");
    }
  }
  if (sp.segments.size() > cover.k()) {
    report.add("visits " + std::to_string(sp.segments.size()) + " geodesics, more than k = " +
               std::to_string(cover.k()));
  }
}

}  // namespace

RhoSequence::RhoSequence(Distance rho, std::size_t k) : rho_(rho), k_(k) {
  if (rho < 0) throw InvalidArgument("rho must be non-negative");
  values_.push_back(2 * static_cast<std::int64_t>(rho) + 1);
  const auto factor = static_cast<std::int64_t>(2 * k + 5);
  for (std::size_t i = 1; i <= k; ++i) values_.push_back(checked_mul(factor, values_.back()));
}

std::int64_t RhoSequence::segment_threshold(std::size_t level) const {
  return checked_mul(static_cast<std::int64_t>(2 * k_ + 3), (*this)[level]);
}

const char* to_string(Direction d) { return d == Direction::forward ? "forward" : "backward"; }

std::string to_string(const SnapType& t) {
  std::ostringstream out;
  out << '(';
  for (const auto& [geodesic, dir] : t.visits) out << 'P' << geodesic << (dir == Direction::forward ? "+" : "-") << ',';
  out << "l=" << t.level << ')';
  return out.str();
}

Walk concat(const SnapPath& sp) {
  if (sp.connectors.size() != sp.segments.size() + 1) {
    throw InvalidArgument("snap-path needs exactly one more connector than segments");
  }
  Walk out = sp.connectors.front();
  for (std::size_t i = 0; i < sp.segments.size(); ++i) {
    out = concatenate(out, sp.segments[i].walk);
    out = concatenate(out, sp.connectors[i + 1]);
  }
  return out;
}

Vertex CoverProjection::nearest_vertex(const GeodesicCover& cover, Vertex v) const {
  const auto i = static_cast<std::size_t>(v);
  return cover.paths[geodesic[i]].vertices[position[i]];
}

CoverProjection project_onto_cover(const Graph& g, const GeodesicCover& cover) {
  const std::size_t n = g.vertex_count();
  CoverProjection proj;
  proj.geodesic.assign(n, 0);
  proj.position.assign(n, 0);
  proj.dist.assign(n, kUnreachable);

  std::vector<Distance> dist(n);
  std::vector<std::size_t> label(n);
  std::vector<Vertex> queue;
  for (std::size_t gi = 0; gi < cover.k(); ++gi) {
    std::fill(dist.begin(), dist.end(), kUnreachable);
    queue.clear();
    const auto& path = cover.paths[gi].vertices;
    for (std::size_t pos = 0; pos < path.size(); ++pos) {
      const auto v = static_cast<std::size_t>(path[pos]);
      if (dist[v] == kUnreachable) {
        dist[v] = 0;
        label[v] = pos;
        queue.push_back(path[pos]);
      }
    }
    // Layered BFS: a vertex's label is the smallest position among its nearest path vertices.
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const auto v = static_cast<std::size_t>(queue[head]);
      for (Vertex w : g.neighbors(queue[head])) {
        const auto wi = static_cast<std::size_t>(w);
        if (dist[wi] == kUnreachable) {
          dist[wi] = dist[v] + 1;
          label[wi] = label[v];
          queue.push_back(w);
        } else if (dist[wi] == dist[v] + 1) {
          label[wi] = std::min(label[wi], label[v]);
        }
      }
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (dist[v] < proj.dist[v]) {
        proj.dist[v] = dist[v];
        proj.geodesic[v] = gi;
        proj.position[v] = label[v];
      }
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (proj.dist[v] == kUnreachable || proj.dist[v] > cover.rho) {
      throw InvalidArgument("cover is invalid: vertex " + std::to_string(v) + " is farther than rho from it");
    }
  }
  return proj;
}

Snapper::Snapper(const Graph& g, const GeodesicCover& cover) : graph_(g), cover_(cover) {
  const auto report = verify_cover(g, cover);
  if (!report.ok()) throw InvalidArgument("cover is invalid: " + report.violations.front());
  projection_ = project_onto_cover(g, cover);
}

SnapPath Snapper::snap(const Walk& p) const {
  if (!is_geodesic(graph_, p)) throw InvalidArgument("snap requires a shortest path");
  const auto& verts = p.vertices;
  const std::size_t last_index = verts.size() - 1;
  auto geodesic_of = [&](std::size_t idx) { return projection_.geodesic[static_cast<std::size_t>(verts[idx])]; };
  auto position_of = [&](std::size_t idx) { return projection_.position[static_cast<std::size_t>(verts[idx])]; };
  auto nearest = [&](std::size_t idx) { return projection_.nearest_vertex(cover_, verts[idx]); };

  SnapPath sp;
  sp.connectors.push_back(shortest_path(graph_, verts[0], nearest(0)));
  std::size_t cur = 0;
  for (;;) {
    const std::size_t gi = geodesic_of(cur);
    std::size_t split = last_index;
    while (geodesic_of(split) != gi) --split;

    Segment seg;
    seg.geodesic = gi;
    seg.first = position_of(cur);
    seg.last = position_of(split);
    seg.direction = seg.first <= seg.last ? Direction::forward : Direction::backward;
    seg.walk = cover_.paths[gi].slice(seg.first, seg.last);
    sp.segments.push_back(std::move(seg));

    if (split == last_index) {
      sp.connectors.push_back(shortest_path(graph_, nearest(last_index), verts[last_index]));
      break;
    }
    // back from the geodesic to v, across the edge vv', then onto the next geodesic
    Walk connector = shortest_path(graph_, nearest(split), verts[split]);
    connector = concatenate(connector, Walk({verts[split], verts[split + 1]}));
    connector = concatenate(connector, shortest_path(graph_, verts[split + 1], nearest(split + 1)));
    sp.connectors.push_back(std::move(connector));
    cur = split + 1;
  }
  return sp;
}

SnapPath snap(const Graph& g, const GeodesicCover& cover, const Walk& p) { return Snapper(g, cover).snap(p); }

SnapPath simplify(const SnapPath& raw, std::size_t k, Distance rho) {
  if (raw.level) throw InvalidArgument("simplify expects a raw snap-path");
  if (raw.segments.size() > k) throw InvalidArgument("snap-path visits more than k geodesics");
  const RhoSequence seq(rho, k);
  SnapPath sp = raw;
  std::size_t level = 0;
  for (;;) {
    const auto threshold = seq.segment_threshold(level);
    auto short_seg = std::find_if(sp.segments.begin(), sp.segments.end(), [&](const Segment& s) {
      return static_cast<std::int64_t>(s.length()) <= threshold;
    });
    if (short_seg == sp.segments.end()) break;
    const auto j = static_cast<std::size_t>(short_seg - sp.segments.begin());
    Walk merged = concatenate(concatenate(sp.connectors[j], short_seg->walk), sp.connectors[j + 1]);
    sp.connectors[j] = std::move(merged);
    sp.connectors.erase(sp.connectors.begin() + static_cast<std::ptrdiff_t>(j) + 1);
    sp.segments.erase(short_seg);
    ++level;
  }
  sp.level = level;
  return sp;
}

SnapType type_of(const SnapPath& sp) {
  if (!sp.level) throw InvalidArgument("type_of expects a simplified snap-path");
  SnapType t;
  t.level = *sp.level;
  for (const auto& seg : sp.segments) t.visits.emplace_back(seg.geodesic, seg.direction);
  return t;
}

Report validate_raw(const Graph& g, const GeodesicCover& cover, const SnapPath& sp) {
  Report report;
  check_structure(g, cover, sp, report);
  if (!report.ok()) return report;
  const auto rho = static_cast<std::size_t>(cover.rho);
  for (std::size_t i = 0; i < sp.connectors.size(); ++i) {
    const bool outer = i == 0 || i + 1 == sp.connectors.size();
    const std::size_t limit = outer ? rho : 2 * rho + 1;
    if (sp.connectors[i].length() > limit) {
      report.add(piece_name("R", i) + " has length " + std::to_string(sp.connectors[i].length()) + " > " +
                 std::to_string(limit));
    }
  }
  return report;
}

Report validate_simplified(const Graph& g, const GeodesicCover& cover, const SnapPath& sp) {
  Report report;
  if (!sp.level) {
    report.add("snap-path is raw");
    return report;
  }
  if (*sp.level > cover.k()) report.add("level exceeds k");
  check_structure(g, cover, sp, report);
  if (!report.ok()) return report;
  const RhoSequence seq(cover.rho, cover.k());
  const std::int64_t connector_limit = seq[*sp.level];
  const std::int64_t segment_floor = seq.segment_threshold(*sp.level);
  for (std::size_t i = 0; i < sp.connectors.size(); ++i) {
    if (static_cast<std::int64_t>(sp.connectors[i].length()) > connector_limit) {
      report.add(piece_name("R", i) + " longer than rho_" + std::to_string(*sp.level));
    }
  }
  for (std::size_t i = 0; i < sp.segments.size(); ++i) {
    if (static_cast<std::int64_t>(sp.segments[i].length()) <= segment_floor) {
      report.add(piece_name("Q", i + 1) + " not longer than (2k+3) rho_" + std::to_string(*sp.level));
    }
  }
  return report;
}

ThresholdFlags segment_thresholds(const SnapPath& sp, std::size_t k, Distance rho) {
  if (!sp.level) throw InvalidArgument("segment_thresholds expects a simplified snap-path");
  const RhoSequence seq(rho, k);
  const std::int64_t r = seq[*sp.level];
  const auto kk = static_cast<std::int64_t>(k);
  ThresholdFlags flags;
  for (const auto& seg : sp.segments) {
    const auto len = static_cast<std::int64_t>(seg.length());
    flags.above_2k_plus_3 = flags.above_2k_plus_3 && len > (2 * kk + 3) * r;
    flags.above_2k_plus_2 = flags.above_2k_plus_2 && len > (2 * kk + 2) * r;
    flags.above_k_plus_2 = flags.above_k_plus_2 && len > (kk + 2) * r;
  }
  return flags;
}

std::int64_t same_type_bound(std::size_t k, Distance rho, std::size_t level, std::int64_t gamma) {
  const RhoSequence seq(rho, k);
  const std::int64_t r = seq[level];
  const auto kk = static_cast<std::int64_t>(k);
  const std::int64_t inner = 4 * kk * rho + 2 * r + checked_mul(2 * kk, r);
  return gamma + checked_mul(kk, inner) + checked_mul(6 * kk + 4, r);
}

ProximityReport check_same_type_proximity(const Graph& g, const GeodesicCover& cover, const SnapPath& a,
                                          const SnapPath& b, std::int64_t gamma) {
  if (!a.level || !b.level || *a.level != *b.level) {
    throw InvalidArgument("precondition failed: snap-paths are not simplified at the same level");
  }
  for (const SnapPath* sp : {&a, &b}) {
    const auto report = validate_simplified(g, cover, *sp);
    if (!report.ok()) throw InvalidArgument("precondition failed: " + report.violations.front());
  }
  const Walk wa = concat(a);
  const Walk wb = concat(b);
  if (wa.start() != wb.start()) throw InvalidArgument("precondition failed: different start vertices");
  if (type_of(a) != type_of(b)) throw InvalidArgument("precondition failed: different types");
  const auto la = static_cast<std::int64_t>(wa.length());
  const auto lb = static_cast<std::int64_t>(wb.length());
  if (std::abs(la - lb) > gamma) throw InvalidArgument("precondition failed: length difference exceeds gamma");
  const auto delta = static_cast<Distance>(4 * cover.k() * static_cast<std::size_t>(cover.rho));
  if (!is_almost_shortest(g, wa, delta) || !is_almost_shortest(g, wb, delta)) {
    throw InvalidArgument("precondition failed: concatenation is not 4k rho-almost shortest");
  }
  ProximityReport out;
  out.bound = same_type_bound(cover.k(), cover.rho, *a.level, gamma);
  out.actual = distance(g, wa.end(), wb.end());
  out.ok = out.actual <= out.bound;
  return out;
}

}  // namespace coarsepw
