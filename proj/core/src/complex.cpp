#include "rectsurf/complex.hpp"

#include <algorithm>
#include <numeric>

#include "rectsurf/error.hpp"

namespace rectsurf {

// ---------------------------------------------------------------------------
// Grid

Grid::Grid(std::vector<Rational> xs, std::vector<Rational> ys)
    : xs_(sorted_unique(std::move(xs))), ys_(sorted_unique(std::move(ys))) {}

Grid Grid::of(std::span<const RatRect> rects) {
  std::vector<Rational> xs, ys;
  xs.reserve(rects.size() * 2);
  ys.reserve(rects.size() * 2);
  for (const RatRect& r : rects) {
    xs.push_back(r.x_lo());
    xs.push_back(r.x_hi());
    ys.push_back(r.y_lo());
    ys.push_back(r.y_hi());
  }
  return Grid(std::move(xs), std::move(ys));
}

Grid Grid::merged(const Grid& other) const {
  std::vector<Rational> xs(xs_), ys(ys_);
  xs.insert(xs.end(), other.xs_.begin(), other.xs_.end());
  ys.insert(ys.end(), other.ys_.begin(), other.ys_.end());
  return Grid(std::move(xs), std::move(ys));
}

Grid Grid::with_point(const RatPoint& p) const {
  std::vector<Rational> xs(xs_), ys(ys_);
  xs.push_back(p.x);
  ys.push_back(p.y);
  return Grid(std::move(xs), std::move(ys));
}

bool Grid::refines(const Grid& coarser) const {
  return std::includes(xs_.begin(), xs_.end(), coarser.xs_.begin(), coarser.xs_.end()) &&
         std::includes(ys_.begin(), ys_.end(), coarser.ys_.begin(), coarser.ys_.end());
}

bool Grid::valid(const CellKey& k) const {
  if (k.i < 0 || k.j < 0 || k.i >= nx() || k.j >= ny()) return false;
  switch (k.kind) {
    case CellKind::kVertex: return true;
    case CellKind::kHEdge: return k.i + 1 < nx();
    case CellKind::kVEdge: return k.j + 1 < ny();
    case CellKind::kFace: return k.i + 1 < nx() && k.j + 1 < ny();
  }
  return false;
}

namespace {

std::optional<int> find_line(const std::vector<Rational>& v, const Rational& x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || *it != x) return std::nullopt;
  return static_cast<int>(it - v.begin());
}

// (index, on_line) or nullopt when outside [front, back].
std::optional<std::pair<int, bool>> locate_1d(const std::vector<Rational>& v, const Rational& x) {
  if (v.empty() || x < v.front() || x > v.back()) return std::nullopt;
  auto it = std::lower_bound(v.begin(), v.end(), x);
  const int idx = static_cast<int>(it - v.begin());
  if (*it == x) return std::make_pair(idx, true);
  return std::make_pair(idx - 1, false);
}

}  // namespace

std::optional<int> Grid::line_x(const Rational& v) const { return find_line(xs_, v); }
std::optional<int> Grid::line_y(const Rational& v) const { return find_line(ys_, v); }

std::optional<CellKey> Grid::locate(const RatPoint& p) const {
  auto lx = locate_1d(xs_, p.x);
  auto ly = locate_1d(ys_, p.y);
  if (!lx || !ly) return std::nullopt;
  CellKind kind;
  if (lx->second && ly->second) kind = CellKind::kVertex;
  else if (lx->second) kind = CellKind::kVEdge;
  else if (ly->second) kind = CellKind::kHEdge;
  else kind = CellKind::kFace;
  return CellKey{kind, lx->first, ly->first};
}

std::pair<RatPoint, RatPoint> Grid::footprint(const CellKey& k) const {
  const auto i = static_cast<std::size_t>(k.i);
  const auto j = static_cast<std::size_t>(k.j);
  const bool wide = k.kind == CellKind::kHEdge || k.kind == CellKind::kFace;
  const bool tall = k.kind == CellKind::kVEdge || k.kind == CellKind::kFace;
  return {RatPoint{xs_[i], ys_[j]}, RatPoint{wide ? xs_[i + 1] : xs_[i], tall ? ys_[j + 1] : ys_[j]}};
}

RatPoint Grid::interior_point(const CellKey& k) const {
  auto [lo, hi] = footprint(k);
  return {(lo.x + hi.x) / 2, (lo.y + hi.y) / 2};
}

Rational Grid::squared_distance(const RatPoint& p, const CellKey& k) const {
  auto [lo, hi] = footprint(k);
  Rational dx = 0, dy = 0;
  if (p.x < lo.x) dx = lo.x - p.x;
  else if (p.x > hi.x) dx = p.x - hi.x;
  if (p.y < lo.y) dy = lo.y - p.y;
  else if (p.y > hi.y) dy = p.y - hi.y;
  return dx * dx + dy * dy;
}

std::vector<CellKey> Grid::closure(const CellKey& k) const {
  const int i = k.i, j = k.j;
  using K = CellKind;
  switch (k.kind) {
    case K::kVertex: return {};
    case K::kHEdge: return {{K::kVertex, i, j}, {K::kVertex, i + 1, j}};
    case K::kVEdge: return {{K::kVertex, i, j}, {K::kVertex, i, j + 1}};
    case K::kFace:
      return {{K::kHEdge, i, j},     {K::kVEdge, i + 1, j},     {K::kHEdge, i, j + 1},
              {K::kVEdge, i, j},     {K::kVertex, i, j},        {K::kVertex, i + 1, j},
              {K::kVertex, i + 1, j + 1}, {K::kVertex, i, j + 1}};
  }
  return {};
}

std::vector<CellKey> Grid::star(const CellKey& k) const {
  const int i = k.i, j = k.j;
  using K = CellKind;
  std::vector<CellKey> out;
  switch (k.kind) {
    case K::kVertex:
      out = {{K::kHEdge, i - 1, j}, {K::kHEdge, i, j},         {K::kVEdge, i, j - 1},    {K::kVEdge, i, j},
             {K::kFace, i - 1, j - 1}, {K::kFace, i, j - 1}, {K::kFace, i - 1, j}, {K::kFace, i, j}};
      break;
    case K::kHEdge: out = {{K::kFace, i, j - 1}, {K::kFace, i, j}}; break;
    case K::kVEdge: out = {{K::kFace, i - 1, j}, {K::kFace, i, j}}; break;
    case K::kFace: break;
  }
  std::erase_if(out, [&](const CellKey& c) { return !valid(c); });
  return out;
}

Grid::Box Grid::box(const RatRect& r) const {
  auto i0 = line_x(r.x_lo()), i1 = line_x(r.x_hi());
  auto j0 = line_y(r.y_lo()), j1 = line_y(r.y_hi());
  if (!i0 || !i1 || !j0 || !j1) {
    throw Error(ErrorCode::kPreconditionViolated, "grid does not refine rectangle corners");
  }
  return {*i0, *i1, *j0, *j1};
}

RatRect Grid::rect(const Box& b) const {
  return RatRect(xs_[static_cast<std::size_t>(b.i0)], xs_[static_cast<std::size_t>(b.i1)],
                 ys_[static_cast<std::size_t>(b.j0)], ys_[static_cast<std::size_t>(b.j1)]);
}

bool cell_in_box(const CellKey& k, const Grid::Box& b) {
  const bool wide = k.kind == CellKind::kHEdge || k.kind == CellKind::kFace;
  const bool tall = k.kind == CellKind::kVEdge || k.kind == CellKind::kFace;
  return k.i >= b.i0 && k.j >= b.j0 && (wide ? k.i + 1 <= b.i1 : k.i <= b.i1) &&
         (tall ? k.j + 1 <= b.j1 : k.j <= b.j1);
}

// ---------------------------------------------------------------------------
// DisjointSets

DisjointSets::DisjointSets(std::size_t n) { resize(n); }

void DisjointSets::resize(std::size_t n) {
  const std::size_t old = parent_.size();
  parent_.resize(n);
  rank_.resize(n, 0);
  std::iota(parent_.begin() + static_cast<std::ptrdiff_t>(old), parent_.end(), old);
}

std::size_t DisjointSets::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool DisjointSets::unite(std::size_t x, std::size_t y) {
  x = find(x);
  y = find(y);
  if (x == y) return false;
  if (rank_[x] < rank_[y]) std::swap(x, y);
  parent_[y] = x;
  if (rank_[x] == rank_[y]) ++rank_[x];
  return true;
}

// ---------------------------------------------------------------------------
// CellComplex

namespace {

std::size_t local_slot(const Grid::Box& b, const CellKey& k) {
  const auto h = static_cast<std::size_t>(b.j1 - b.j0 + 1);
  return (static_cast<std::size_t>(k.i - b.i0) * h + static_cast<std::size_t>(k.j - b.j0)) * 4 +
         static_cast<std::size_t>(k.kind);
}

std::size_t box_slots(const Grid::Box& b) {
  return static_cast<std::size_t>(b.i1 - b.i0 + 1) * static_cast<std::size_t>(b.j1 - b.j0 + 1) * 4;
}

template <typename F>
void for_each_cell(const Grid::Box& b, F&& f) {
  for (int i = b.i0; i <= b.i1; ++i) {
    for (int j = b.j0; j <= b.j1; ++j) {
      f(CellKey{CellKind::kVertex, i, j});
      if (i < b.i1) f(CellKey{CellKind::kHEdge, i, j});
      if (j < b.j1) f(CellKey{CellKind::kVEdge, i, j});
      if (i < b.i1 && j < b.j1) f(CellKey{CellKind::kFace, i, j});
    }
  }
}

}  // namespace

CellComplex CellComplex::build(std::span<const RatRect> rects, std::span<const std::pair<int, int>> glue,
                               Grid grid) {
  CellComplex cx;
  cx.grid_ = std::move(grid);
  const Grid& g = cx.grid_;
  cx.boxes_.reserve(rects.size());
  cx.rect_offset_.assign(rects.size() + 1, 0);
  for (std::size_t r = 0; r < rects.size(); ++r) {
    cx.boxes_.push_back(g.box(rects[r]));
    cx.rect_offset_[r + 1] = cx.rect_offset_[r] + box_slots(cx.boxes_.back());
  }
  const std::size_t total = cx.rect_offset_.back();
  DisjointSets sets(total);
  for (auto [a, b] : glue) {
    const Grid::Box& ba = cx.boxes_[static_cast<std::size_t>(a)];
    const Grid::Box& bb = cx.boxes_[static_cast<std::size_t>(b)];
    const Grid::Box overlap{std::max(ba.i0, bb.i0), std::min(ba.i1, bb.i1), std::max(ba.j0, bb.j0),
                            std::min(ba.j1, bb.j1)};
    if (overlap.i0 > overlap.i1 || overlap.j0 > overlap.j1) continue;
    for_each_cell(overlap, [&](const CellKey& k) {
      sets.unite(cx.rect_offset_[static_cast<std::size_t>(a)] + local_slot(ba, k),
                 cx.rect_offset_[static_cast<std::size_t>(b)] + local_slot(bb, k));
    });
  }

  // Number classes in rectangle-major cell order.
  cx.slot_class_.assign(total, -1);
  std::vector<int> root_class(total, -1);
  std::vector<std::vector<int>> members;
  for (std::size_t r = 0; r < rects.size(); ++r) {
    const Grid::Box& b = cx.boxes_[r];
    for_each_cell(b, [&](const CellKey& k) {
      const std::size_t s = cx.rect_offset_[r] + local_slot(b, k);
      const std::size_t root = sets.find(s);
      int& cls = root_class[root];
      if (cls < 0) {
        cls = static_cast<int>(cx.keys_.size());
        cx.keys_.push_back(k);
        members.emplace_back();
      }
      cx.slot_class_[s] = cls;
      auto& m = members[static_cast<std::size_t>(cls)];
      if (m.empty() || m.back() != static_cast<int>(r)) m.push_back(static_cast<int>(r));
    });
  }

  const auto n = static_cast<std::size_t>(cx.class_count());
  auto fill_csr = [n](Csr& csr, const std::vector<std::vector<int>>& lists) {
    csr.offsets.assign(n + 1, 0);
    for (std::size_t c = 0; c < n; ++c) csr.offsets[c + 1] = csr.offsets[c] + lists[c].size();
    csr.values.clear();
    csr.values.reserve(csr.offsets.back());
    for (const auto& l : lists) csr.values.insert(csr.values.end(), l.begin(), l.end());
  };
  fill_csr(cx.members_, members);

  std::vector<std::vector<int>> down(n), up(n);
  for (std::size_t c = 0; c < n; ++c) {
    const CellKey& k = cx.keys_[c];
    const int rep = members[c].front();
    for (const CellKey& sub : g.closure(k)) down[c].push_back(cx.class_of(rep, sub));
    for (int r : members[c]) {
      for (const CellKey& sup : g.star(k)) {
        const int s = cx.class_of(r, sup);
        if (s >= 0) up[c].push_back(s);
      }
    }
    std::sort(up[c].begin(), up[c].end());
    up[c].erase(std::unique(up[c].begin(), up[c].end()), up[c].end());
  }
  fill_csr(cx.down_, down);
  fill_csr(cx.up_, up);

  cx.at_offsets_.assign(g.slot_count() + 1, 0);
  for (std::size_t c = 0; c < n; ++c) ++cx.at_offsets_[g.slot(cx.keys_[c]) + 1];
  for (std::size_t s = 0; s < g.slot_count(); ++s) cx.at_offsets_[s + 1] += cx.at_offsets_[s];
  cx.at_values_.assign(n, -1);
  {
    std::vector<std::size_t> cursor(cx.at_offsets_.begin(), cx.at_offsets_.end() - 1);
    for (std::size_t c = 0; c < n; ++c) cx.at_values_[cursor[g.slot(cx.keys_[c])]++] = static_cast<int>(c);
  }

  cx.interior_.assign(n, 0);
  for (std::size_t c = 0; c < n; ++c) {
    const CellKind kind = cx.keys_[c].kind;
    if (kind == CellKind::kFace) {
      cx.interior_[c] = 1;
    } else if (kind != CellKind::kVertex) {
      cx.interior_[c] = up[c].size() == 2 ? 1 : 0;
    } else {
      // Four faces and four edges in one cycle around the vertex.
      int faces = 0, edges = 0;
      bool all_edges_interior = true;
      for (int s : up[c]) {
        if (cx.keys_[static_cast<std::size_t>(s)].kind == CellKind::kFace) ++faces;
        else {
          ++edges;
          all_edges_interior = all_edges_interior && up[static_cast<std::size_t>(s)].size() == 2;
        }
      }
      cx.interior_[c] = (faces == 4 && edges == 4 && all_edges_interior) ? 1 : 0;
    }
  }
  return cx;
}

std::span<const int> CellComplex::classes_at(const CellKey& k) const {
  if (!grid_.valid(k)) return {};
  const std::size_t s = grid_.slot(k);
  return {at_values_.data() + at_offsets_[s], at_offsets_[s + 1] - at_offsets_[s]};
}

int CellComplex::class_of(int rect, const CellKey& k) const {
  const Grid::Box& b = boxes_[static_cast<std::size_t>(rect)];
  if (!cell_in_box(k, b)) return -1;
  return slot_class_[rect_offset_[static_cast<std::size_t>(rect)] + local_slot(b, k)];
}

int CellComplex::class_of(int rect, const RatPoint& p) const {
  auto k = grid_.locate(p);
  if (!k) return -1;
  return class_of(rect, *k);
}

int CellComplex::neighbor(int cls, const CellKey& k) const {
  if (key(cls) == k) return cls;
  for (int s : up(cls)) {
    if (key(s) == k) return s;
  }
  for (int s : down(cls)) {
    if (key(s) == k) return s;
  }
  return -1;
}

std::vector<int> CellComplex::classes_of_kind(CellKind kind) const {
  std::vector<int> out;
  for (int c = 0; c < class_count(); ++c) {
    if (key(c).kind == kind) out.push_back(c);
  }
  return out;
}

}  // namespace rectsurf
