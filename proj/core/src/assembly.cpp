#include "rectsurf/assembly.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "rectsurf/error.hpp"

namespace rectsurf {

namespace {

constexpr int kBottom = 0, kRight = 1, kTop = 2, kLeft = 3;
// Edges at each corner (LL, LR, UR, UL).
constexpr std::array<std::array<int, 2>, 4> kCornerEdges{{{kBottom, kLeft}, {kBottom, kRight}, {kRight, kTop}, {kTop, kLeft}}};

struct Block {
  Grid::Box box;
  std::vector<int> faces;
};

std::size_t local_slot(const Grid::Box& b, const CellKey& k) {
  const auto h = static_cast<std::size_t>(b.j1 - b.j0 + 1);
  return (static_cast<std::size_t>(k.i - b.i0) * h + static_cast<std::size_t>(k.j - b.j0)) * 4 +
         static_cast<std::size_t>(k.kind);
}

constexpr std::int64_t kUnset = INT64_MIN;

std::vector<std::int64_t> block_ids(const Grid& grid, const Block& b, const std::vector<AbstractFace>& faces) {
  std::vector<std::int64_t> ids(static_cast<std::size_t>(b.box.i1 - b.box.i0 + 1) *
                                    static_cast<std::size_t>(b.box.j1 - b.box.j0 + 1) * 4,
                                kUnset);
  for (int f : b.faces) {
    const AbstractFace& face = faces[static_cast<std::size_t>(f)];
    ids[local_slot(b.box, face.key)] = -1 - static_cast<std::int64_t>(f);
    auto closure = grid.closure(face.key);
    for (std::size_t t = 0; t < 8; ++t) ids[local_slot(b.box, closure[t])] = face.ids[t];
  }
  return ids;
}

}  // namespace

std::vector<std::int64_t> split_pinched_vertices(std::vector<AbstractFace>& faces) {
  // Corner slots: face * 4 + corner.
  const std::size_t m = faces.size() * 4;
  DisjointSets sets(m);
  std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> seen;  // (vertex, edge) -> corner slot
  std::int64_t next_id = 0;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    for (std::int64_t id : faces[f].ids) next_id = std::max(next_id, id + 1);
    for (std::size_t c = 0; c < 4; ++c) {
      const std::int64_t v = faces[f].ids[4 + c];
      for (int e : kCornerEdges[c]) {
        auto [it, fresh] = seen.emplace(std::make_pair(v, faces[f].ids[static_cast<std::size_t>(e)]), f * 4 + c);
        if (!fresh) sets.unite(it->second, f * 4 + c);
      }
    }
  }
  std::map<std::int64_t, std::vector<std::size_t>> roots;  // vertex -> component roots, first seen first
  for (std::size_t s = 0; s < m; ++s) {
    auto& list = roots[faces[s / 4].ids[4 + s % 4]];
    const std::size_t r = sets.find(s);
    if (std::find(list.begin(), list.end(), r) == list.end()) list.push_back(r);
  }
  std::vector<std::int64_t> split;
  for (const auto& [v, list] : roots) {
    if (list.size() > 1) split.push_back(v);
  }
  // Renumber: component 0 keeps the old id.
  std::map<std::pair<std::int64_t, std::size_t>, std::int64_t> fresh;
  for (std::size_t s = 0; s < m; ++s) {
    std::int64_t& v = faces[s / 4].ids[4 + s % 4];
    const std::size_t r = sets.find(s);
    const auto& list = roots[v];
    if (list.front() == r) continue;
    auto [it, inserted] = fresh.emplace(std::make_pair(v, r), next_id);
    if (inserted) ++next_id;
    v = it->second;
  }
  return split;
}

Surface assemble(const Grid& grid, const std::vector<AbstractFace>& faces, int base_face, const RatPoint& base_point,
                 bool open) {
  if (faces.empty()) throw Error(ErrorCode::kPreconditionViolated, "no faces to assemble");
  const std::size_t n = faces.size();

  // Face across each edge id, indexed by side.
  std::unordered_map<std::int64_t, int> by_left, by_bottom;
  for (std::size_t f = 0; f < n; ++f) {
    by_left[faces[f].ids[kLeft]] = static_cast<int>(f);
    by_bottom[faces[f].ids[kBottom]] = static_cast<int>(f);
  }
  auto right_of = [&](int f) -> int {
    const AbstractFace& a = faces[static_cast<std::size_t>(f)];
    auto it = by_left.find(a.ids[kRight]);
    if (it == by_left.end()) return -1;
    const AbstractFace& b = faces[static_cast<std::size_t>(it->second)];
    return (b.key.i == a.key.i + 1 && b.key.j == a.key.j) ? it->second : -1;
  };
  auto above = [&](int f) -> int {
    const AbstractFace& a = faces[static_cast<std::size_t>(f)];
    auto it = by_bottom.find(a.ids[kTop]);
    if (it == by_bottom.end()) return -1;
    const AbstractFace& b = faces[static_cast<std::size_t>(it->second)];
    return (b.key.i == a.key.i && b.key.j == a.key.j + 1) ? it->second : -1;
  };
  std::vector<int> left_of(n, -1);
  for (std::size_t f = 0; f < n; ++f) {
    const int r = right_of(static_cast<int>(f));
    if (r >= 0) left_of[static_cast<std::size_t>(r)] = static_cast<int>(f);
  }

  // Horizontal runs.
  std::vector<int> run_of(n, -1);
  std::vector<std::vector<int>> runs;
  auto start_run = [&](int f) {
    std::vector<int> run;
    for (int g = f; g >= 0 && run_of[static_cast<std::size_t>(g)] < 0; g = right_of(g)) {
      run_of[static_cast<std::size_t>(g)] = static_cast<int>(runs.size());
      run.push_back(g);
    }
    runs.push_back(std::move(run));
  };
  for (std::size_t f = 0; f < n; ++f) {
    if (left_of[f] < 0 && run_of[f] < 0) start_run(static_cast<int>(f));
  }
  for (std::size_t f = 0; f < n; ++f) {
    if (run_of[f] < 0) start_run(static_cast<int>(f));
  }

  // Stack runs with identical extents into blocks.
  std::vector<char> absorbed(runs.size(), 0);
  std::vector<Block> blocks;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    if (absorbed[r]) continue;
    absorbed[r] = 1;
    Block b;
    const CellKey& first = faces[static_cast<std::size_t>(runs[r].front())].key;
    b.box = {first.i, first.i + static_cast<int>(runs[r].size()), first.j, first.j + 1};
    b.faces = runs[r];
    std::vector<int> top = runs[r];
    while (true) {
      const int up = above(top.front());
      if (up < 0) break;
      const auto ur = static_cast<std::size_t>(run_of[static_cast<std::size_t>(up)]);
      if (absorbed[ur] || runs[ur].size() != top.size() || runs[ur].front() != up) break;
      bool match = true;
      for (std::size_t t = 0; t < top.size() && match; ++t) match = above(top[t]) == runs[ur][t];
      if (!match) break;
      absorbed[ur] = 1;
      b.faces.insert(b.faces.end(), runs[ur].begin(), runs[ur].end());
      ++b.box.j1;
      top = runs[ur];
    }
    blocks.push_back(std::move(b));
  }

  // Glue blocks sharing a cell; break up blocks whose overlap disagrees.
  std::vector<std::pair<int, int>> glue;
  while (true) {
    std::vector<std::vector<std::int64_t>> ids;
    ids.reserve(blocks.size());
    for (const Block& b : blocks) ids.push_back(block_ids(grid, b, faces));
    glue.clear();
    int conflict_a = -1, conflict_b = -1;
    for (std::size_t a = 0; a < blocks.size() && conflict_a < 0; ++a) {
      for (std::size_t c = a + 1; c < blocks.size(); ++c) {
        const Grid::Box& ba = blocks[a].box;
        const Grid::Box& bc = blocks[c].box;
        const Grid::Box ov{std::max(ba.i0, bc.i0), std::min(ba.i1, bc.i1), std::max(ba.j0, bc.j0),
                           std::min(ba.j1, bc.j1)};
        if (ov.i0 > ov.i1 || ov.j0 > ov.j1) continue;
        bool shared = false, consistent = true;
        for (int i = ov.i0; i <= ov.i1; ++i) {
          for (int j = ov.j0; j <= ov.j1; ++j) {
            for (int kind = 0; kind < 4; ++kind) {
              const CellKey k{static_cast<CellKind>(kind), i, j};
              if (!cell_in_box(k, ov)) continue;
              if (ids[a][local_slot(ba, k)] == ids[c][local_slot(bc, k)]) shared = true;
              else consistent = false;
            }
          }
        }
        if (!shared) continue;
        if (consistent) {
          glue.emplace_back(static_cast<int>(a), static_cast<int>(c));
        } else if (blocks[a].faces.size() > 1 || blocks[c].faces.size() > 1) {
          conflict_a = static_cast<int>(a);
          conflict_b = static_cast<int>(c);
          break;
        }
      }
    }
    if (conflict_a < 0) break;
    std::vector<Block> next;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (static_cast<int>(b) != conflict_a && static_cast<int>(b) != conflict_b) {
        next.push_back(std::move(blocks[b]));
        continue;
      }
      for (int f : blocks[b].faces) {
        const CellKey& k = faces[static_cast<std::size_t>(f)].key;
        next.push_back(Block{{k.i, k.i + 1, k.j, k.j + 1}, {f}});
      }
    }
    blocks = std::move(next);
  }

  std::vector<RatRect> rects;
  rects.reserve(blocks.size());
  int base_rect = -1;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    rects.push_back(grid.rect(blocks[b].box));
    if (std::find(blocks[b].faces.begin(), blocks[b].faces.end(), base_face) != blocks[b].faces.end()) {
      base_rect = static_cast<int>(b);
    }
  }
  return Surface(std::move(rects), std::move(glue), Anchor{base_rect, base_point}, open);
}

std::vector<AbstractFace> faces_of(const CellComplex& cx, const std::vector<int>& face_classes) {
  std::vector<AbstractFace> out;
  out.reserve(face_classes.size());
  for (int f : face_classes) {
    AbstractFace face{cx.key(f), {}};
    auto down = cx.down(f);
    for (std::size_t t = 0; t < 8; ++t) face.ids[t] = down[t];
    out.push_back(face);
  }
  return out;
}

}  // namespace rectsurf
