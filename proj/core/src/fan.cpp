#include "fan.hpp"

#include <algorithm>

namespace rectsurf {

namespace {

struct Fan {
  std::vector<int> cells;  // faces and edges around the vertex
  std::vector<int> comp;   // component label per cell
  int components = 0;
};

Fan build_fan(const CellComplex& cx, int vertex) {
  Fan fan;
  auto up = cx.up(vertex);
  fan.cells.assign(up.begin(), up.end());
  const std::size_t m = fan.cells.size();
  DisjointSets sets(m);
  auto local = [&](int cls) -> std::size_t {
    auto it = std::find(fan.cells.begin(), fan.cells.end(), cls);
    return static_cast<std::size_t>(it - fan.cells.begin());
  };
  for (std::size_t a = 0; a < m; ++a) {
    const int c = fan.cells[a];
    if (cx.kind(c) != CellKind::kFace) continue;
    for (int d : cx.down(c)) {
      const std::size_t b = local(d);
      if (b < m) sets.unite(a, b);
    }
  }
  fan.comp.assign(m, -1);
  std::vector<int> label(m, -1);
  for (std::size_t a = 0; a < m; ++a) {
    const std::size_t r = sets.find(a);
    if (label[r] < 0) label[r] = fan.components++;
    fan.comp[a] = label[r];
  }
  return fan;
}

}  // namespace

FanShape vertex_fan_shape(const CellComplex& cx, int vertex) {
  const Fan fan = build_fan(cx, vertex);
  std::vector<int> faces(static_cast<std::size_t>(fan.components), 0);
  std::vector<char> cycle(static_cast<std::size_t>(fan.components), 1);
  bool overfull = false;
  for (std::size_t a = 0; a < fan.cells.size(); ++a) {
    const int c = fan.cells[a];
    const auto k = static_cast<std::size_t>(fan.comp[a]);
    if (cx.kind(c) == CellKind::kFace) {
      ++faces[k];
    } else {
      const std::size_t deg = cx.up(c).size();
      if (deg != 2) cycle[k] = 0;
      if (deg > 2) overfull = true;
    }
  }
  if (overfull) return FanShape::kBranched;
  if (fan.components == 1) {
    if (cycle[0]) return faces[0] == 4 ? FanShape::kInterior : FanShape::kBranched;
    return faces[0] <= 3 ? FanShape::kArc : FanShape::kPinched;
  }
  for (int k = 0; k < fan.components; ++k) {
    if (cycle[static_cast<std::size_t>(k)]) return FanShape::kBranched;
  }
  return FanShape::kPinched;
}

std::vector<std::vector<int>> vertex_fan_components(const CellComplex& cx, int vertex) {
  const Fan fan = build_fan(cx, vertex);
  std::vector<std::vector<int>> out(static_cast<std::size_t>(fan.components));
  for (std::size_t a = 0; a < fan.cells.size(); ++a) {
    if (cx.kind(fan.cells[a]) == CellKind::kFace) out[static_cast<std::size_t>(fan.comp[a])].push_back(fan.cells[a]);
  }
  return out;
}

}  // namespace rectsurf
