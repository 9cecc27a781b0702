#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "rectsurf/complex.hpp"
#include "rectsurf/geom.hpp"
#include "rectsurf/rational.hpp"

namespace rectsurf {

// A point of a surface, named by a rectangle whose closed developed image
// contains it. Independent of any grid refinement.
struct Anchor {
  int rect = 0;
  RatPoint point;

  friend bool operator==(const Anchor&, const Anchor&) = default;
};

using SurfacePoint = Anchor;

// Rectangles A_0..A_{n-1} glued along their full closed overlaps according to
// an undirected graph, with a basepoint. `open` marks the interior of the union.
class Surface {
 public:
  Surface(std::vector<RatRect> rects, std::vector<std::pair<int, int>> glue, Anchor base, bool open = false);

  const std::vector<RatRect>& rects() const { return rects_; }
  const std::vector<std::pair<int, int>>& glue() const { return glue_; }
  const Anchor& base() const { return base_; }
  bool is_open() const { return open_; }
  int rect_count() const { return static_cast<int>(rects_.size()); }

  // Quotient complex on the surface's own grid.
  const CellComplex& complex() const { return *complex_; }
  // Quotient complex on a refinement of the own grid.
  CellComplex complex_on(const Grid& grid) const;

  Surface with_open(bool open) const { return Surface(rects_, glue_, base_, open); }
  Surface with_base(Anchor base) const { return Surface(rects_, glue_, std::move(base), open_); }

 private:
  std::vector<RatRect> rects_;
  std::vector<std::pair<int, int>> glue_;
  Anchor base_;
  bool open_ = false;
  std::shared_ptr<const CellComplex> complex_;
};

enum class Violation {
  kDisconnected,
  kBranchPoint,
  kBoundarySelfTouching,
  kBasepointOutside,
  kGlueWithoutContact,
};

std::string_view to_string(Violation v);

struct ValidationIssue {
  Violation kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }
  bool has(Violation v) const;
  std::string summary() const;
};

ValidationReport validate(const Surface& s);
// Throws kInvalidSurface naming the first violation.
void require_valid(const Surface& s);

// Class of the anchor's cell, or -1 if the anchor is not in its rectangle.
int anchor_class(const CellComplex& cx, const Anchor& a);
// A cell is usable by a point or an immersion: everything for closed
// surfaces, manifold-interior cells for open ones.
inline bool is_active(const CellComplex& cx, int cls, bool open) { return !open || cx.is_interior(cls); }

RatPoint dev(const Surface& s, const SurfacePoint& p);
inline RatPoint base_dev(const Surface& s) { return s.base().point; }

// All rectangles and the basepoint shifted by v.
Surface translated(const Surface& s, const RatPoint& v);
// Translate so the basepoint develops to the origin.
Surface normalize(const Surface& s);
bool is_normalized(const Surface& s);

int euler_characteristic(const Surface& s);

// One loop per boundary component, surface on the left.
std::vector<RectiLoop> boundary_loops(const Surface& s);

// A boundary loop with its edge classes in traversal order; edge 0 starts at
// corner 0 of the loop.
struct BoundaryCycle {
  RectiLoop loop;
  std::vector<int> edges;
};
std::vector<BoundaryCycle> boundary_cycles(const CellComplex& cx);

struct Classification {
  enum class Kind { kDisk, kPuncturedDisk, kNotAPlanarPiece };
  Kind kind;
  int punctures = 0;

  friend bool operator==(const Classification&, const Classification&) = default;
};

std::string to_string(const Classification& c);
Classification classify(const Surface& s);
inline bool is_disk(const Surface& s) { return classify(s).kind == Classification::Kind::kDisk; }

// The (rectangles, gluing graph, basepoint set) invariant.
struct Encoding {
  std::vector<RatRect> rects;
  std::vector<std::pair<int, int>> glue;
  std::vector<int> base_set;
};

Encoding encode(const Surface& s);
Surface decode(const Encoding& e, const RatPoint& base_dev);

}  // namespace rectsurf
