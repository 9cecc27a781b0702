#include "rectsurf/disks.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <set>

#include "rectsurf/assembly.hpp"
#include "rectsurf/error.hpp"
#include "rectsurf/lattice.hpp"

namespace rectsurf {

namespace {

// Sides and corners of a face copy, in AbstractFace order.
enum Side { kBottom = 0, kRight = 1, kTop = 2, kLeft = 3 };
enum Corner { kLL = 0, kLR = 1, kUR = 2, kUL = 3 };

// A grid edge crossed by k identifications between copies of the faces on
// either side (lo is below or to the left).
struct InnerEdge {
  CellKey key;
  int lo = -1;
  int hi = -1;
  int k = 0;
};

// All ways to pair k of the m_lo copies with k of the m_hi copies.
std::vector<std::vector<std::pair<int, int>>> matchings(int m_lo, int m_hi, int k) {
  std::vector<std::vector<std::pair<int, int>>> out;
  std::vector<int> lo_pick;
  std::vector<char> hi_used(static_cast<std::size_t>(m_hi), 0);
  std::vector<std::pair<int, int>> cur;
  std::function<void(int)> pick_hi = [&](int idx) {
    if (idx == k) {
      out.push_back(cur);
      return;
    }
    for (int h = 0; h < m_hi; ++h) {
      if (hi_used[static_cast<std::size_t>(h)]) continue;
      hi_used[static_cast<std::size_t>(h)] = 1;
      cur.emplace_back(lo_pick[static_cast<std::size_t>(idx)], h);
      pick_hi(idx + 1);
      cur.pop_back();
      hi_used[static_cast<std::size_t>(h)] = 0;
    }
  };
  std::function<void(int)> pick_lo = [&](int from) {
    if (static_cast<int>(lo_pick.size()) == k) {
      pick_hi(0);
      return;
    }
    for (int l = from; l < m_lo; ++l) {
      lo_pick.push_back(l);
      pick_lo(l + 1);
      lo_pick.pop_back();
    }
  };
  pick_lo(0);
  return out;
}

class DiskSearch {
 public:
  explicit DiskSearch(const RectiLoop& loop) : loop_(loop) {}

  std::vector<Surface> run() {
    std::vector<WeightedRect> region;
    try {
      region = loop_region_decomposition(loop_);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kNegativeWinding) return {};
      throw;
    }
    std::vector<Rational> xs, ys;
    for (const RatPoint& v : loop_.vertices()) {
      xs.push_back(v.x);
      ys.push_back(v.y);
    }
    grid_ = Grid(sorted_unique(std::move(xs)), sorted_unique(std::move(ys)));
    fx_ = grid_.nx() - 1;
    fy_ = grid_.ny() - 1;
    mult_.assign(static_cast<std::size_t>(fx_ * fy_), 0);
    for (const WeightedRect& w : region) {
      const CellKey k = *grid_.locate({(w.rect.x_lo() + w.rect.x_hi()) / 2, (w.rect.y_lo() + w.rect.y_hi()) / 2});
      mult_[static_cast<std::size_t>(face_index(k.i, k.j))] = w.multiplicity;
    }
    copy_start_.assign(mult_.size() + 1, 0);
    for (std::size_t f = 0; f < mult_.size(); ++f) copy_start_[f + 1] = copy_start_[f] + mult_[f];
    const int copies = copy_start_.back();
    if (copies == 0) return {};
    partner_.assign(static_cast<std::size_t>(copies) * 4, -1);

    if (!count_traversals()) return {};
    plan_vertices();
    for (const CellKey& v : ready_[0]) {
      if (!vertex_ok(v)) return {};
    }
    choose(0);
    return std::move(found_);
  }

 private:
  int face_index(int i, int j) const { return (i >= 0 && j >= 0 && i < fx_ && j < fy_) ? i * fy_ + j : -1; }
  int mult(int f) const { return f < 0 ? 0 : mult_[static_cast<std::size_t>(f)]; }
  int copy(int f, int c) const { return copy_start_[static_cast<std::size_t>(f)] + c; }
  int face_of_copy(int c) const {
    return static_cast<int>(std::upper_bound(copy_start_.begin(), copy_start_.end(), c) - copy_start_.begin()) - 1;
  }
  int& partner(int c, int side) { return partner_[static_cast<std::size_t>(c) * 4 + static_cast<std::size_t>(side)]; }

  // Per grid edge: how often the loop runs along it with the lo or hi face on
  // its left. Fixes the number of identifications across every edge.
  bool count_traversals() {
    std::map<CellKey, std::pair<int, int>> along;  // (lo on left, hi on left)
    const std::size_t n = loop_.size();
    for (std::size_t s = 0; s < n; ++s) {
      const RatPoint& a = loop_.vertex(s);
      const RatPoint& b = loop_.vertex(s + 1);
      if (a.y == b.y) {
        const int j = *grid_.line_y(a.y);
        const int i0 = *grid_.line_x(std::min(a.x, b.x)), i1 = *grid_.line_x(std::max(a.x, b.x));
        for (int i = i0; i < i1; ++i) {
          auto& t = along[{CellKind::kHEdge, i, j}];
          (b.x > a.x ? t.second : t.first) += 1;
        }
      } else {
        const int i = *grid_.line_x(a.x);
        const int j0 = *grid_.line_y(std::min(a.y, b.y)), j1 = *grid_.line_y(std::max(a.y, b.y));
        for (int j = j0; j < j1; ++j) {
          auto& t = along[{CellKind::kVEdge, i, j}];
          (b.y > a.y ? t.first : t.second) += 1;
        }
      }
    }
    auto add = [&](const CellKey& key, int lo, int hi) {
      const auto it = along.find(key);
      const int a_lo = it == along.end() ? 0 : it->second.first;
      const int a_hi = it == along.end() ? 0 : it->second.second;
      const int k = mult(lo) - a_lo;
      if (k < 0 || k != mult(hi) - a_hi) return false;
      if (k > 0) edges_.push_back({key, lo, hi, k});
      return true;
    };
    for (int i = 0; i + 1 < grid_.nx(); ++i) {
      for (int j = 0; j < grid_.ny(); ++j) {
        if (!add({CellKind::kHEdge, i, j}, face_index(i, j - 1), face_index(i, j))) return false;
      }
    }
    for (int i = 0; i < grid_.nx(); ++i) {
      for (int j = 0; j + 1 < grid_.ny(); ++j) {
        if (!add({CellKind::kVEdge, i, j}, face_index(i - 1, j), face_index(i, j))) return false;
      }
    }
    for (const InnerEdge& e : edges_) {
      options_.push_back(matchings(mult(e.lo), mult(e.hi), e.k));
    }
    return true;
  }

  // ready_[t + 1] lists the vertices whose surrounding edges are all decided
  // once edge t is.
  void plan_vertices() {
    std::map<CellKey, int> last;
    for (std::size_t t = 0; t < edges_.size(); ++t) {
      const CellKey& k = edges_[t].key;
      last[{CellKind::kVertex, k.i, k.j}] = static_cast<int>(t) + 1;
      if (k.kind == CellKind::kHEdge) {
        last[{CellKind::kVertex, k.i + 1, k.j}] = static_cast<int>(t) + 1;
      } else {
        last[{CellKind::kVertex, k.i, k.j + 1}] = static_cast<int>(t) + 1;
      }
    }
    ready_.assign(edges_.size() + 1, {});
    for (int i = 0; i < grid_.nx(); ++i) {
      for (int j = 0; j < grid_.ny(); ++j) {
        const CellKey v{CellKind::kVertex, i, j};
        const auto it = last.find(v);
        ready_[static_cast<std::size_t>(it == last.end() ? 0 : it->second)].push_back(v);
      }
    }
  }

  void apply(std::size_t t, const std::vector<std::pair<int, int>>& m, bool set) {
    const InnerEdge& e = edges_[t];
    const bool h = e.key.kind == CellKind::kHEdge;
    for (auto [l, u] : m) {
      const int a = copy(e.lo, l), b = copy(e.hi, u);
      partner(a, h ? kTop : kRight) = set ? b : -1;
      partner(b, h ? kBottom : kLeft) = set ? a : -1;
    }
  }

  // The copies around a vertex must form full turns of four faces or arcs of
  // at most three.
  bool vertex_ok(const CellKey& v) {
    struct Around {
      int face;
      int side_a, side_b;  // sides meeting at v
    };
    const Around around[4] = {
        {face_index(v.i, v.j), kBottom, kLeft},
        {face_index(v.i - 1, v.j), kRight, kBottom},
        {face_index(v.i - 1, v.j - 1), kTop, kRight},
        {face_index(v.i, v.j - 1), kLeft, kTop},
    };
    std::vector<std::pair<int, std::array<int, 2>>> nodes;
    for (const Around& a : around) {
      for (int c = 0; c < mult(a.face); ++c) {
        const int id = copy(a.face, c);
        nodes.push_back({id, {partner(id, a.side_a), partner(id, a.side_b)}});
      }
    }
    std::set<int> seen;
    for (const auto& [id, nb] : nodes) {
      if (seen.count(id)) continue;
      int count = 0, links = 0;
      std::vector<int> stack{id};
      seen.insert(id);
      while (!stack.empty()) {
        const int c = stack.back();
        stack.pop_back();
        ++count;
        for (const auto& [other, onb] : nodes) {
          if (other != c) continue;
          for (int d : onb) {
            if (d < 0) continue;
            ++links;
            if (seen.insert(d).second) stack.push_back(d);
          }
        }
      }
      links /= 2;
      if (links == count ? count != 4 : count > 3) return false;
    }
    return true;
  }

  void choose(std::size_t t) {
    if (t == edges_.size()) {
      record();
      return;
    }
    for (const auto& m : options_[t]) {
      apply(t, m, true);
      bool ok = true;
      for (const CellKey& v : ready_[t + 1]) {
        if (!vertex_ok(v)) {
          ok = false;
          break;
        }
      }
      if (ok) choose(t + 1);
      apply(t, m, false);
    }
  }

  std::vector<AbstractFace> faces() {
    const int copies = copy_start_.back();
    DisjointSets sets(static_cast<std::size_t>(copies) * 8);
    auto edge_slot = [](int c, int side) { return static_cast<std::size_t>(c) * 8 + static_cast<std::size_t>(side); };
    auto corner_slot = [](int c, int corner) {
      return static_cast<std::size_t>(c) * 8 + 4 + static_cast<std::size_t>(corner);
    };
    for (int c = 0; c < copies; ++c) {
      const int up = partner(c, kTop);
      if (up >= 0) {
        sets.unite(edge_slot(c, kTop), edge_slot(up, kBottom));
        sets.unite(corner_slot(c, kUL), corner_slot(up, kLL));
        sets.unite(corner_slot(c, kUR), corner_slot(up, kLR));
      }
      const int right = partner(c, kRight);
      if (right >= 0) {
        sets.unite(edge_slot(c, kRight), edge_slot(right, kLeft));
        sets.unite(corner_slot(c, kLR), corner_slot(right, kLL));
        sets.unite(corner_slot(c, kUR), corner_slot(right, kUL));
      }
    }
    std::vector<AbstractFace> out;
    for (int c = 0; c < copies; ++c) {
      const int f = face_of_copy(c);
      AbstractFace af{{CellKind::kFace, f / fy_, f % fy_}, {}};
      for (std::size_t s = 0; s < 8; ++s) {
        af.ids[s] = static_cast<std::int64_t>(sets.find(static_cast<std::size_t>(c) * 8 + s));
      }
      out.push_back(af);
    }
    return out;
  }

  // Copies next to the loop's first edge that have that edge on their boundary.
  std::vector<int> anchor_copies() {
    const RatPoint& a = loop_.vertex(0);
    const RatPoint& b = loop_.vertex(1);
    const int i = *grid_.line_x(a.x), j = *grid_.line_y(a.y);
    int face = -1, side = 0;
    if (a.y == b.y) {
      if (b.x > a.x) {
        face = face_index(i, j), side = kBottom;
      } else {
        face = face_index(i - 1, j - 1), side = kTop;
      }
    } else if (b.y > a.y) {
      face = face_index(i - 1, j), side = kRight;
    } else {
      face = face_index(i, j - 1), side = kLeft;
    }
    std::vector<int> out;
    for (int c = 0; c < mult(face); ++c) {
      if (partner(copy(face, c), side) < 0) out.push_back(copy(face, c));
    }
    return out;
  }

  void record() {
    const std::vector<AbstractFace> fs = faces();
    const std::vector<int> anchors = anchor_copies();
    if (anchors.empty()) return;
    auto at = [&](int c) {
      return assemble(grid_, fs, c, grid_.interior_point(fs[static_cast<std::size_t>(c)].key));
    };
    Surface d = at(anchors.front());
    if (!validate(d).ok() || !is_disk(d)) return;
    const auto loops = boundary_loops(d);
    if (loops.size() != 1 || !loops.front().same_cycle(loop_)) return;
    for (int c : anchors) {
      const Surface alt = c == anchors.front() ? d : at(c);
      for (const Surface& e : found_) {
        if (isomorphic(alt, e)) return;
      }
    }
    found_.push_back(std::move(d));
  }

  const RectiLoop& loop_;
  Grid grid_;
  int fx_ = 0, fy_ = 0;
  std::vector<int> mult_;
  std::vector<int> copy_start_;
  std::vector<int> partner_;
  std::vector<InnerEdge> edges_;
  std::vector<std::vector<std::vector<std::pair<int, int>>>> options_;
  std::vector<std::vector<CellKey>> ready_;
  std::vector<Surface> found_;
};

// Some rectangle of the surface holding the class.
int rect_of(const CellComplex& cx, int cls) {
  for (int r = 0; r < cx.rect_count(); ++r) {
    if (cx.class_of(r, cx.key(cls)) == cls) return r;
  }
  throw Error(ErrorCode::kInvalidSurface, "cell class lies in no rectangle");
}

Surface assemble_classes(const CellComplex& cx, std::vector<int> faces, int base_cls, const RatPoint& base_point,
                         bool open) {
  std::sort(faces.begin(), faces.end());
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
  int base_face = -1;
  for (std::size_t f = 0; f < faces.size() && base_face < 0; ++f) {
    const auto down = cx.down(faces[f]);
    if (faces[f] == base_cls || std::find(down.begin(), down.end(), base_cls) != down.end()) {
      base_face = static_cast<int>(f);
    }
  }
  if (base_face < 0) throw Error(ErrorCode::kPreconditionViolated, "basepoint is not in the region");
  return assemble(cx.grid(), faces_of(cx, faces), base_face, base_point, open);
}

// Fill the complementary components of `placed` in the host complex that do
// not reach the host boundary.
std::vector<int> filled_faces(const ImmersionMap& placed) {
  const CellComplex& tc = placed.target_complex();
  const int n = tc.class_count();
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (int c : placed.image_classes()) in[static_cast<std::size_t>(c)] = 1;
  std::vector<int> faces;
  for (int c = 0; c < n; ++c) {
    if (in[static_cast<std::size_t>(c)] && tc.kind(c) == CellKind::kFace) faces.push_back(c);
  }
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int start = 0; start < n; ++start) {
    if (in[static_cast<std::size_t>(start)] || seen[static_cast<std::size_t>(start)]) continue;
    std::vector<int> comp{start};
    seen[static_cast<std::size_t>(start)] = 1;
    bool touches_boundary = false;
    for (std::size_t q = 0; q < comp.size(); ++q) {
      const int c = comp[q];
      if (tc.is_boundary(c)) touches_boundary = true;
      auto visit = [&](int d) {
        if (!in[static_cast<std::size_t>(d)] && !seen[static_cast<std::size_t>(d)]) {
          seen[static_cast<std::size_t>(d)] = 1;
          comp.push_back(d);
        }
      };
      for (int d : tc.up(c)) visit(d);
      for (int d : tc.down(c)) visit(d);
    }
    if (touches_boundary) continue;
    for (int c : comp) {
      if (tc.kind(c) == CellKind::kFace) faces.push_back(c);
    }
  }
  return faces;
}

Surface fill(const Surface& s, const Surface& sub, bool open) {
  const Grid g = sub.complex().grid().merged(s.complex().grid());
  const ImmersionMap placed = place_sub_union(sub, s, false, g);
  const CellComplex& tc = placed.target_complex();
  std::vector<int> faces = filled_faces(placed);
  std::size_t own = 0;
  for (int c : placed.image_classes()) own += tc.kind(c) == CellKind::kFace ? 1 : 0;
  if (faces.size() == own) return sub;
  const auto base = placed.map_point(sub.base());
  if (!base) throw Error(ErrorCode::kInvalidSubUnion, "sub-union basepoint is not mapped");
  return assemble_classes(tc, std::move(faces), anchor_class(tc, *base), base->point, open);
}

Rational min_spacing(const Grid& g) {
  std::optional<Rational> best;
  for (const auto* v : {&g.xs(), &g.ys()}) {
    for (std::size_t i = 0; i + 1 < v->size(); ++i) {
      const Rational d = (*v)[i + 1] - (*v)[i];
      if (!best || d < *best) best = d;
    }
  }
  return best.value_or(Rational(1));
}

Grid with_lines(const Grid& g, const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  std::vector<Rational> x = g.xs(), y = g.ys();
  x.insert(x.end(), xs.begin(), xs.end());
  y.insert(y.end(), ys.begin(), ys.end());
  return Grid(sorted_unique(std::move(x)), sorted_unique(std::move(y)));
}

// A region of a closed host, as sheet-tagged rectangles.
struct Region {
  Surface host;
  std::vector<std::pair<int, RatRect>> pieces;

  std::vector<int> faces(const CellComplex& cx) const {
    std::vector<int> out;
    for (const auto& [rect, r] : pieces) {
      const Grid::Box b = cx.grid().box(r);
      for (int i = b.i0; i < b.i1; ++i) {
        for (int j = b.j0; j < b.j1; ++j) {
          const int c = cx.class_of(rect, CellKey{CellKind::kFace, i, j});
          if (c < 0) throw Error(ErrorCode::kPreconditionViolated, "region leaves its host");
          out.push_back(c);
        }
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  void add_face(const CellComplex& cx, int f) {
    auto [lo, hi] = cx.grid().footprint(cx.key(f));
    pieces.emplace_back(rect_of(cx, f), RatRect(lo.x, hi.x, lo.y, hi.y));
  }
};

// Adds the faces around every pinched vertex on a finer grid until there are
// none. Returns the final grid.
Grid repair(Region& region, Grid g) {
  for (int round = 0; round < 16; ++round) {
    const CellComplex cx = region.host.complex_on(g);
    std::vector<AbstractFace> af = faces_of(cx, region.faces(cx));
    const std::vector<std::int64_t> split = split_pinched_vertices(af);
    if (split.empty()) return g;
    const Rational d = min_spacing(g) / 4;
    std::vector<std::pair<int, RatPoint>> at;
    std::vector<Rational> xs, ys;
    for (std::int64_t v : split) {
      const int cls = static_cast<int>(v);
      const RatPoint p = g.footprint(cx.key(cls)).first;
      at.emplace_back(rect_of(cx, cls), p);
      xs.insert(xs.end(), {p.x - d, p.x + d});
      ys.insert(ys.end(), {p.y - d, p.y + d});
    }
    g = with_lines(g, xs, ys);
    const CellComplex fine = region.host.complex_on(g);
    for (const auto& [rect, p] : at) {
      const int v = fine.class_of(rect, p);
      for (int f : fine.up(v)) {
        if (fine.kind(f) == CellKind::kFace) region.add_face(fine, f);
      }
    }
  }
  throw Error(ErrorCode::kPreconditionViolated, "corner contacts persist after repair");
}

}  // namespace

std::vector<Surface> disks_bounded_by(const RectiLoop& loop) { return DiskSearch(loop).run(); }

Surface smallest_closed_disk(const Surface& s, const Surface& k) {
  Surface d = fill(s.with_open(false), k.with_open(false), false);
  if (!is_disk(d)) {
    throw Error(ErrorCode::kNotContainedInS, "filling of the sub-union in the host is " + to_string(classify(d)));
  }
  return d;
}

Surface smallest_open_disk(const Surface& s, const Surface& u) {
  return fill(s.with_open(false), u.with_open(true), true);
}

std::vector<Surface> immersed_images(const Surface& k) {
  const auto& rects = k.rects();
  const int n = k.rect_count();
  std::set<std::pair<int, int>> own(k.glue().begin(), k.glue().end());
  std::vector<std::pair<int, int>> extra;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!own.count({i, j}) && rects[static_cast<std::size_t>(i)].meets(rects[static_cast<std::size_t>(j)])) {
        extra.emplace_back(i, j);
      }
    }
  }
  const Grid& g = k.complex().grid();
  auto signature = [&](const CellComplex& cx) {
    std::vector<int> sig;
    for (int r = 0; r < n; ++r) {
      const Grid::Box b = cx.rect_box(r);
      for (int i = b.i0; i <= b.i1; ++i) {
        for (int j = b.j0; j <= b.j1; ++j) {
          for (CellKind kind : {CellKind::kVertex, CellKind::kHEdge, CellKind::kVEdge, CellKind::kFace}) {
            const CellKey key{kind, i, j};
            if (g.valid(key) && cell_in_box(key, b)) sig.push_back(cx.class_of(r, key));
          }
        }
      }
    }
    return sig;
  };

  std::set<std::vector<int>> seen;
  std::vector<Surface> valid;
  std::vector<std::vector<char>> queue{std::vector<char>(extra.size(), 0)};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const std::vector<char> chosen = queue[q];
    std::vector<std::pair<int, int>> glue(k.glue());
    for (std::size_t e = 0; e < extra.size(); ++e) {
      if (chosen[e]) glue.push_back(extra[e]);
    }
    Surface s(rects, glue, k.base(), k.is_open());
    if (!seen.insert(signature(s.complex())).second) continue;
    if (validate(s).ok()) valid.push_back(s);
    for (std::size_t e = 0; e < extra.size(); ++e) {
      if (chosen[e]) continue;
      std::vector<char> next = chosen;
      next[e] = 1;
      queue.push_back(std::move(next));
    }
  }
  std::vector<Surface> out;
  for (Surface& s : valid) {
    const bool dup = std::any_of(out.begin(), out.end(), [&](const Surface& t) { return isomorphic(s, t); });
    if (!dup) out.push_back(std::move(s));
  }
  return out;
}

std::vector<Surface> smallest_open_disks_of_embeddings(const Surface& u) {
  const Classification c = classify(u);
  if (c.kind == Classification::Kind::kDisk) return {u.with_open(true)};
  if (c.kind != Classification::Kind::kPuncturedDisk) {
    throw Error(ErrorCode::kPreconditionViolated, "expected a disk or punctured disk, got " + to_string(c));
  }
  const Surface k = u.with_open(false);
  const CellComplex& cx = k.complex();
  std::vector<BoundaryCycle> outer;
  for (BoundaryCycle& b : boundary_cycles(cx)) {
    if (b.loop.rotation_index() == 1) outer.push_back(std::move(b));
  }
  if (outer.size() != 1) throw Error(ErrorCode::kPreconditionViolated, "outer boundary loop is not unique");
  const int first_face = cx.up(outer.front().edges.front()).front();
  const RatPoint y = cx.grid().interior_point(cx.key(first_face));
  const Surface k_y = k.with_base(Anchor{rect_of(cx, first_face), y});

  std::vector<Surface> out;
  for (const Surface& v : disks_bounded_by(outer.front().loop)) {
    const Surface v_y = v.with_base(Anchor{v.base().rect, y});
    FusionResult f = fuse({k_y, v_y});
    const auto base = f.injections.front().map_point(Anchor{u.base().rect, u.base().point - y});
    if (!base) continue;
    Surface w = normalize(f.surface.with_base(*base));
    if (!validate(w).ok() || !is_disk(w)) continue;
    w = w.with_open(true);
    const bool dup = std::any_of(out.begin(), out.end(), [&](const Surface& t) { return isomorphic(w, t); });
    if (!dup) out.push_back(std::move(w));
  }
  return out;
}

Surface nested_rational_union(const Surface& k1, const Surface& k3, const std::optional<ImmersionMap>& witness) {
  const Surface a = normalize(k1.with_open(false));
  const Surface b = normalize(k3.with_open(false));
  std::optional<ImmersionMap> w = witness;
  if (!w) {
    ImmersionResult r = find_immersion(a, b.with_open(true));
    if (r) w = std::move(r.map);
  }
  if (!w || !w->injective() || !w->target().is_open()) {
    throw Error(ErrorCode::kPreconditionViolated, "k1 does not embed into the interior of k3");
  }

  const Grid& g0 = w->grid();
  const Rational d = min_spacing(g0) / 4;
  std::vector<Rational> xs, ys;
  for (const Rational& x : g0.xs()) xs.insert(xs.end(), {x - d, x + d});
  for (const Rational& y : g0.ys()) ys.insert(ys.end(), {y - d, y + d});
  Grid g = with_lines(g0, xs, ys);

  // Thicken: every face of the finer grid touching the image.
  auto acx = std::make_shared<const CellComplex>(a.complex_on(g));
  auto bcx = std::make_shared<const CellComplex>(b.complex_on(g));
  ImmersionResult fine = continue_from(a, b, acx, bcx, anchor_class(*acx, a.base()), anchor_class(*bcx, b.base()));
  if (!fine) throw Error(ErrorCode::kPreconditionViolated, "k1 does not immerse into k3");
  Region region{b, {}};
  std::set<int> faces;
  for (int c : fine.map->image_classes()) {
    if (bcx->kind(c) == CellKind::kFace) faces.insert(c);
    for (int f : bcx->up(c)) {
      if (bcx->kind(f) == CellKind::kFace) faces.insert(f);
    }
  }
  for (int f : faces) region.add_face(*bcx, f);

  g = repair(region, g);
  const CellComplex cx = b.complex_on(g);
  Surface k2 = assemble_classes(cx, region.faces(cx), anchor_class(cx, b.base()), b.base().point, false);
  if (is_disk(b)) k2 = smallest_closed_disk(b, k2);
  return k2;
}

Surface repair_butterflies(const Surface& host, const Surface& k) {
  const Surface h = host.with_open(false);
  const Grid g0 = k.complex().grid().merged(h.complex().grid());
  const ImmersionMap placed = place_sub_union(k.with_open(false), h, false, g0);
  const CellComplex& tc = placed.target_complex();
  Region region{h, {}};
  for (int c : placed.image_classes()) {
    if (tc.kind(c) == CellKind::kFace) region.add_face(tc, c);
  }
  const Grid g = repair(region, g0);
  if (g == g0) return k;
  const CellComplex cx = h.complex_on(g);
  const auto base = placed.map_point(k.base());
  const int base_cls = cx.class_of(base->rect, base->point);
  return assemble_classes(cx, region.faces(cx), base_cls, base->point, k.is_open());
}

}  // namespace rectsurf
