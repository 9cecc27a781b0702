#pragma once

#include <vector>

#include "rectsurf/complex.hpp"

namespace rectsurf {

// Shape of the faces and edges around a vertex class.
enum class FanShape {
  kInterior,  // one cycle of four faces
  kArc,       // one arc of at most three faces
  kPinched,   // several arcs, or an arc that wraps a full turn
  kBranched,  // a cycle with the wrong angle, or a cycle plus anything else
};

FanShape vertex_fan_shape(const CellComplex& cx, int vertex);

// Connected components of the fan at `vertex`, as lists of face classes.
std::vector<std::vector<int>> vertex_fan_components(const CellComplex& cx, int vertex);

}  // namespace rectsurf
