#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rectsurf/geom.hpp"
#include "rectsurf/rational.hpp"

namespace rectsurf {

enum class CellKind : std::uint8_t { kVertex = 0, kHEdge = 1, kVEdge = 2, kFace = 3 };

// A cell of a grid refinement, addressed by the index of its lower-left grid
// vertex. HEdge(i, j) runs from vertex (i, j) to (i + 1, j); VEdge(i, j) from
// (i, j) to (i, j + 1); Face(i, j) is the open cell above-right of (i, j).
struct CellKey {
  CellKind kind;
  int i;
  int j;

  friend bool operator==(const CellKey&, const CellKey&) = default;
  friend auto operator<=>(const CellKey&, const CellKey&) = default;
};

inline int dimension(CellKind kind) {
  return kind == CellKind::kVertex ? 0 : (kind == CellKind::kFace ? 2 : 1);
}

// Sorted distinct x and y coordinates.
class Grid {
 public:
  Grid() = default;
  Grid(std::vector<Rational> xs, std::vector<Rational> ys);

  static Grid of(std::span<const RatRect> rects);

  const std::vector<Rational>& xs() const { return xs_; }
  const std::vector<Rational>& ys() const { return ys_; }
  int nx() const { return static_cast<int>(xs_.size()); }
  int ny() const { return static_cast<int>(ys_.size()); }

  Grid merged(const Grid& other) const;
  Grid with_point(const RatPoint& p) const;
  bool refines(const Grid& coarser) const;

  std::size_t slot_count() const { return static_cast<std::size_t>(nx()) * static_cast<std::size_t>(ny()) * 4; }
  std::size_t slot(const CellKey& k) const {
    return (static_cast<std::size_t>(k.i) * static_cast<std::size_t>(ny()) + static_cast<std::size_t>(k.j)) * 4 +
           static_cast<std::size_t>(k.kind);
  }
  bool valid(const CellKey& k) const;

  // Index of a grid line equal to v, or nullopt.
  std::optional<int> line_x(const Rational& v) const;
  std::optional<int> line_y(const Rational& v) const;
  // Cell containing p (nullopt when p is outside the grid hull).
  std::optional<CellKey> locate(const RatPoint& p) const;

  // Closed footprint of the cell as lower-left and upper-right corners.
  std::pair<RatPoint, RatPoint> footprint(const CellKey& k) const;
  RatPoint interior_point(const CellKey& k) const;
  Rational squared_distance(const RatPoint& p, const CellKey& k) const;

  // Cells in the closure (boundary only) and open star (excluding the cell).
  std::vector<CellKey> closure(const CellKey& k) const;
  std::vector<CellKey> star(const CellKey& k) const;

  // Inclusive vertex index range covered by a rectangle whose sides lie on grid
  // lines.
  struct Box {
    int i0, i1, j0, j1;
  };
  Box box(const RatRect& r) const;
  RatRect rect(const Box& b) const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::vector<Rational> xs_;
  std::vector<Rational> ys_;
};

bool cell_in_box(const CellKey& k, const Grid::Box& b);

// Quotient of the copies of grid cells lying in each closed rectangle, under
// the identifications induced by the gluing graph. Each class is one cell of
// the glued surface.
class CellComplex {
 public:
  static CellComplex build(std::span<const RatRect> rects, std::span<const std::pair<int, int>> glue, Grid grid);

  const Grid& grid() const { return grid_; }
  int class_count() const { return static_cast<int>(keys_.size()); }
  const CellKey& key(int cls) const { return keys_[static_cast<std::size_t>(cls)]; }
  CellKind kind(int cls) const { return key(cls).kind; }

  std::span<const int> down(int cls) const { return span_of(down_, cls); }
  std::span<const int> up(int cls) const { return span_of(up_, cls); }
  std::span<const int> members(int cls) const { return span_of(members_, cls); }
  std::span<const int> classes_at(const CellKey& k) const;

  // Class of the copy of cell `k` in rectangle `rect`, or -1.
  int class_of(int rect, const CellKey& k) const;
  int class_of(int rect, const RatPoint& p) const;

  // Incident (or identical) class with footprint `k`, or -1.
  int neighbor(int cls, const CellKey& k) const;

  // Manifold interior: faces, edges with two faces, vertices whose incident
  // faces close up into a cycle.
  bool is_interior(int cls) const { return interior_[static_cast<std::size_t>(cls)] != 0; }
  bool is_boundary(int cls) const { return !is_interior(cls); }

  int rect_count() const { return static_cast<int>(boxes_.size()); }
  const Grid::Box& rect_box(int rect) const { return boxes_[static_cast<std::size_t>(rect)]; }

  std::vector<int> classes_of_kind(CellKind kind) const;

 private:
  struct Csr {
    std::vector<std::size_t> offsets;
    std::vector<int> values;
  };
  static std::span<const int> span_of(const Csr& csr, int cls) {
    const auto c = static_cast<std::size_t>(cls);
    return {csr.values.data() + csr.offsets[c], csr.offsets[c + 1] - csr.offsets[c]};
  }

  Grid grid_;
  std::vector<Grid::Box> boxes_;
  std::vector<std::size_t> rect_offset_;
  std::vector<int> slot_class_;
  std::vector<CellKey> keys_;
  Csr down_, up_, members_;
  std::vector<std::size_t> at_offsets_;
  std::vector<int> at_values_;
  std::vector<std::uint8_t> interior_;
};

// Union-find with path halving and union by rank.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n = 0);
  void resize(std::size_t n);
  std::size_t find(std::size_t x);
  // Returns true when x and y were in different sets.
  bool unite(std::size_t x, std::size_t y);
  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> rank_;
};

}  // namespace rectsurf
