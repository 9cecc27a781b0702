#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "rectsurf/complex.hpp"
#include "rectsurf/surface.hpp"

namespace rectsurf {

// A face cell of some abstract quotient, with the ids of its closure cells in
// Grid::closure order (bottom, right, top, left edges; LL, LR, UR, UL corners).
// Equal ids mean the same cell of the quotient.
struct AbstractFace {
  CellKey key;
  std::array<std::int64_t, 8> ids;
};

// Give each connected fan around a vertex its own id. Returns the old vertex
// ids that were split.
std::vector<std::int64_t> split_pinched_vertices(std::vector<AbstractFace>& faces);

// Presents the quotient spanned by `faces` as rectangles glued along shared
// cells. Rows of faces are merged into maximal rectangles when that does not
// force extra identifications. Corner-only contacts are kept as glue, so the
// result may fail validation.
Surface assemble(const Grid& grid, const std::vector<AbstractFace>& faces, int base_face, const RatPoint& base_point,
                 bool open = false);

// Faces of a complex restricted to a set of face classes, ids being class ids.
std::vector<AbstractFace> faces_of(const CellComplex& cx, const std::vector<int>& face_classes);

}  // namespace rectsurf
