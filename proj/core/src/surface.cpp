#include "rectsurf/surface.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "rectsurf/error.hpp"
#include "fan.hpp"

namespace rectsurf {

namespace {

std::vector<std::pair<int, int>> normalized_glue(std::vector<std::pair<int, int>> glue, int n) {
  for (auto& [a, b] : glue) {
    if (a < 0 || b < 0 || a >= n || b >= n) {
      throw Error(ErrorCode::kInvalidSurface, "glue index out of range");
    }
    if (a == b) throw Error(ErrorCode::kInvalidSurface, "rectangle glued to itself");
    if (a > b) std::swap(a, b);
  }
  std::sort(glue.begin(), glue.end());
  glue.erase(std::unique(glue.begin(), glue.end()), glue.end());
  return glue;
}

}  // namespace

Surface::Surface(std::vector<RatRect> rects, std::vector<std::pair<int, int>> glue, Anchor base, bool open)
    : rects_(std::move(rects)), base_(std::move(base)), open_(open) {
  if (rects_.empty()) throw Error(ErrorCode::kInvalidSurface, "no rectangles");
  const int n = static_cast<int>(rects_.size());
  glue_ = normalized_glue(std::move(glue), n);
  if (base_.rect < 0 || base_.rect >= n) throw Error(ErrorCode::kInvalidSurface, "basepoint rectangle out of range");
  complex_ = std::make_shared<const CellComplex>(CellComplex::build(rects_, glue_, Grid::of(rects_)));
}

CellComplex Surface::complex_on(const Grid& grid) const {
  if (grid == complex_->grid()) return *complex_;
  return CellComplex::build(rects_, glue_, grid);
}

std::string_view to_string(Violation v) {
  switch (v) {
    case Violation::kDisconnected: return "disconnected";
    case Violation::kBranchPoint: return "branch point";
    case Violation::kBoundarySelfTouching: return "boundary self-touching";
    case Violation::kBasepointOutside: return "basepoint outside";
    case Violation::kGlueWithoutContact: return "glue without contact";
  }
  return "?";
}

bool ValidationReport::has(Violation v) const {
  return std::any_of(issues.begin(), issues.end(), [v](const ValidationIssue& i) { return i.kind == v; });
}

std::string ValidationReport::summary() const {
  if (ok()) return "valid";
  std::ostringstream out;
  for (std::size_t i = 0; i < issues.size(); ++i) {
    if (i) out << "; ";
    out << to_string(issues[i].kind) << " (" << issues[i].detail << ")";
  }
  return out.str();
}

int anchor_class(const CellComplex& cx, const Anchor& a) {
  if (a.rect < 0 || a.rect >= cx.rect_count()) return -1;
  return cx.class_of(a.rect, a.point);
}

ValidationReport validate(const Surface& s) {
  ValidationReport report;
  const CellComplex& cx = s.complex();
  const auto& rects = s.rects();

  for (auto [a, b] : s.glue()) {
    if (!rects[static_cast<std::size_t>(a)].meets(rects[static_cast<std::size_t>(b)])) {
      report.issues.push_back({Violation::kGlueWithoutContact,
                               "rectangles " + std::to_string(a) + " and " + std::to_string(b) + " are disjoint"});
    }
  }

  if (!rects[static_cast<std::size_t>(s.base().rect)].contains(s.base().point)) {
    report.issues.push_back({Violation::kBasepointOutside, "basepoint " + format_point(s.base().point) +
                                                               " not in rectangle " + std::to_string(s.base().rect)});
  } else if (s.is_open() && !cx.is_interior(anchor_class(cx, s.base()))) {
    report.issues.push_back({Violation::kBasepointOutside, "basepoint on the boundary of an open surface"});
  }

  // Connectivity over the incidence graph.
  const int n = cx.class_count();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  int reached = 1;
  while (!queue.empty()) {
    const int c = queue.front();
    queue.pop_front();
    auto visit = [&](int d) {
      if (!seen[static_cast<std::size_t>(d)]) {
        seen[static_cast<std::size_t>(d)] = 1;
        ++reached;
        queue.push_back(d);
      }
    };
    for (int d : cx.up(c)) visit(d);
    for (int d : cx.down(c)) visit(d);
  }
  if (reached != n) report.issues.push_back({Violation::kDisconnected, "quotient has several components"});

  const Grid& g = cx.grid();
  for (int c = 0; c < n; ++c) {
    const CellKey& k = cx.key(c);
    if (k.kind == CellKind::kHEdge || k.kind == CellKind::kVEdge) {
      auto faces = cx.up(c);
      if (faces.size() > 2 || (faces.size() == 2 && cx.key(faces[0]) == cx.key(faces[1]))) {
        auto [lo, hi] = g.footprint(k);
        report.issues.push_back({Violation::kBranchPoint, "edge " + format_point(lo) + "-" + format_point(hi) +
                                                              " has " + std::to_string(faces.size()) +
                                                              " faces on its sides"});
      }
    } else if (k.kind == CellKind::kVertex) {
      const FanShape shape = vertex_fan_shape(cx, c);
      if (shape == FanShape::kBranched) {
        report.issues.push_back(
            {Violation::kBranchPoint, "vertex " + format_point(g.footprint(k).first) + " is a branch point"});
      } else if (shape == FanShape::kPinched) {
        report.issues.push_back({Violation::kBoundarySelfTouching,
                                 "boundary touches itself at vertex " + format_point(g.footprint(k).first)});
      }
    }
  }
  return report;
}

void require_valid(const Surface& s) {
  ValidationReport r = validate(s);
  if (!r.ok()) throw Error(ErrorCode::kInvalidSurface, r.summary());
}

RatPoint dev(const Surface& s, const SurfacePoint& p) {
  if (p.rect < 0 || p.rect >= s.rect_count() || !s.rects()[static_cast<std::size_t>(p.rect)].contains(p.point)) {
    throw Error(ErrorCode::kInvalidPoint, "point " + format_point(p.point) + " not in rectangle " + std::to_string(p.rect));
  }
  if (s.is_open() && !s.complex().is_interior(anchor_class(s.complex(), p))) {
    throw Error(ErrorCode::kInvalidPoint, "point " + format_point(p.point) + " lies on the boundary of an open surface");
  }
  return p.point;
}

Surface translated(const Surface& s, const RatPoint& v) {
  if (v.x == 0 && v.y == 0) return s;
  std::vector<RatRect> rects;
  rects.reserve(s.rects().size());
  for (const RatRect& r : s.rects()) rects.push_back(r.translated(v));
  return Surface(std::move(rects), s.glue(), Anchor{s.base().rect, s.base().point + v}, s.is_open());
}

Surface normalize(const Surface& s) { return translated(s, RatPoint{-s.base().point.x, -s.base().point.y}); }

bool is_normalized(const Surface& s) { return s.base().point.x == 0 && s.base().point.y == 0; }

int euler_characteristic(const Surface& s) {
  const CellComplex& cx = s.complex();
  int chi = 0;
  for (int c = 0; c < cx.class_count(); ++c) chi += dimension(cx.kind(c)) == 1 ? -1 : 1;
  return chi;
}

namespace {

// Start and end vertex classes of a boundary edge, oriented with the surface
// on the left.
std::pair<int, int> oriented_ends(const CellComplex& cx, int edge) {
  const CellKey& k = cx.key(edge);
  const CellKey& f = cx.key(cx.up(edge)[0]);
  auto ends = cx.down(edge);
  // closure order: lower/left endpoint first
  const bool forward = k.kind == CellKind::kHEdge ? f.j == k.j : f.i != k.i;
  return forward ? std::make_pair(ends[0], ends[1]) : std::make_pair(ends[1], ends[0]);
}

}  // namespace

std::vector<BoundaryCycle> boundary_cycles(const CellComplex& cx) {
  const Grid& g = cx.grid();
  const int n = cx.class_count();
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  std::vector<BoundaryCycle> cycles;

  auto is_boundary_edge = [&](int c) {
    const CellKind kind = cx.kind(c);
    return (kind == CellKind::kHEdge || kind == CellKind::kVEdge) && cx.up(c).size() == 1;
  };

  for (int start = 0; start < n; ++start) {
    if (!is_boundary_edge(start) || used[static_cast<std::size_t>(start)]) continue;
    std::vector<int> edges;
    int e = start;
    while (!used[static_cast<std::size_t>(e)]) {
      used[static_cast<std::size_t>(e)] = 1;
      edges.push_back(e);
      const int to = oriented_ends(cx, e).second;
      int next = -1;
      for (int d : cx.up(to)) {
        if (d != e && is_boundary_edge(d) && oriented_ends(cx, d).first == to &&
            (next < 0 || !used[static_cast<std::size_t>(d)])) {
          next = d;
        }
      }
      if (next < 0) throw Error(ErrorCode::kInvalidSurface, "boundary does not close up");
      e = next;
    }
    if (e != start) throw Error(ErrorCode::kInvalidSurface, "boundary walk does not return to its start");
    // Start at a corner, then keep only corners.
    const std::size_t m = edges.size();
    std::size_t shift = 0;
    while (shift < m && cx.kind(edges[shift]) == cx.kind(edges[(shift + m - 1) % m])) ++shift;
    if (shift == m) throw Error(ErrorCode::kInvalidSurface, "boundary loop without corners");
    std::rotate(edges.begin(), edges.begin() + static_cast<std::ptrdiff_t>(shift), edges.end());
    std::vector<RatPoint> corners;
    for (std::size_t i = 0; i < m; ++i) {
      if (cx.kind(edges[i]) != cx.kind(edges[(i + m - 1) % m])) {
        corners.push_back(g.footprint(cx.key(oriented_ends(cx, edges[i]).first)).first);
      }
    }
    cycles.push_back(BoundaryCycle{RectiLoop(std::move(corners)), std::move(edges)});
  }
  return cycles;
}

std::vector<RectiLoop> boundary_loops(const Surface& s) {
  std::vector<RectiLoop> loops;
  for (auto& c : boundary_cycles(s.complex())) loops.push_back(std::move(c.loop));
  return loops;
}

std::string to_string(const Classification& c) {
  switch (c.kind) {
    case Classification::Kind::kDisk: return "Disk";
    case Classification::Kind::kPuncturedDisk: return "PuncturedDisk(" + std::to_string(c.punctures) + ")";
    case Classification::Kind::kNotAPlanarPiece: return "NotAPlanarPiece";
  }
  return "?";
}

Classification classify(const Surface& s) {
  const int chi = euler_characteristic(s);
  const int b = static_cast<int>(boundary_loops(s).size());
  if (b == 1 && chi == 1) return {Classification::Kind::kDisk, 0};
  if (b >= 2 && chi == 2 - b) return {Classification::Kind::kPuncturedDisk, b - 1};
  return {Classification::Kind::kNotAPlanarPiece, 0};
}

Encoding encode(const Surface& s) {
  Encoding e{s.rects(), s.glue(), {}};
  const CellComplex& cx = s.complex();
  const int base = anchor_class(cx, s.base());
  if (base >= 0) {
    for (int r : cx.members(base)) e.base_set.push_back(r);
  }
  return e;
}

Surface decode(const Encoding& e, const RatPoint& base_dev) {
  if (e.base_set.empty()) throw Error(ErrorCode::kInconsistentEncoding, "empty basepoint set");
  std::vector<int> want = e.base_set;
  std::sort(want.begin(), want.end());
  want.erase(std::unique(want.begin(), want.end()), want.end());
  if (want.front() < 0 || want.back() >= static_cast<int>(e.rects.size())) {
    throw Error(ErrorCode::kInconsistentEncoding, "basepoint set index out of range");
  }
  Surface s(e.rects, e.glue, Anchor{want.front(), base_dev});
  ValidationReport report = validate(s);
  if (!report.ok()) throw Error(ErrorCode::kInconsistentEncoding, report.summary());
  const CellComplex& cx = s.complex();
  const int base = anchor_class(cx, s.base());
  std::vector<int> got(cx.members(base).begin(), cx.members(base).end());
  if (got != want) throw Error(ErrorCode::kInconsistentEncoding, "basepoint set does not match the gluing");
  return s;
}

}  // namespace rectsurf
