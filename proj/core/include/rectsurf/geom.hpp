#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rectsurf/rational.hpp"

namespace rectsurf {

// Closed axis-aligned rectangle [x_lo, x_hi] x [y_lo, y_hi] with positive
// width and height.
class RatRect {
 public:
  RatRect(Rational x_lo, Rational x_hi, Rational y_lo, Rational y_hi);

  const Rational& x_lo() const { return x_lo_; }
  const Rational& x_hi() const { return x_hi_; }
  const Rational& y_lo() const { return y_lo_; }
  const Rational& y_hi() const { return y_hi_; }

  Rational width() const { return x_hi_ - x_lo_; }
  Rational height() const { return y_hi_ - y_lo_; }
  Rational area() const { return width() * height(); }

  bool contains(const RatPoint& p) const {
    return x_lo_ <= p.x && p.x <= x_hi_ && y_lo_ <= p.y && p.y <= y_hi_;
  }
  bool contains_in_interior(const RatPoint& p) const {
    return x_lo_ < p.x && p.x < x_hi_ && y_lo_ < p.y && p.y < y_hi_;
  }
  bool contains(const RatRect& r) const {
    return x_lo_ <= r.x_lo_ && r.x_hi_ <= x_hi_ && y_lo_ <= r.y_lo_ && r.y_hi_ <= y_hi_;
  }
  // Closed sets meet.
  bool meets(const RatRect& r) const {
    return x_lo_ <= r.x_hi_ && r.x_lo_ <= x_hi_ && y_lo_ <= r.y_hi_ && r.y_lo_ <= y_hi_;
  }
  // Interiors meet.
  bool overlaps(const RatRect& r) const {
    return x_lo_ < r.x_hi_ && r.x_lo_ < x_hi_ && y_lo_ < r.y_hi_ && r.y_lo_ < y_hi_;
  }

  RatRect translated(const RatPoint& v) const {
    return RatRect(x_lo_ + v.x, x_hi_ + v.x, y_lo_ + v.y, y_hi_ + v.y);
  }

  friend bool operator==(const RatRect&, const RatRect&) = default;
  friend bool operator<(const RatRect& a, const RatRect& b);

 private:
  Rational x_lo_, x_hi_, y_lo_, y_hi_;
};

// Closed rectilinear curve given by its corners in traversal order. The
// closing edge from the last corner back to the first is implicit.
class RectiLoop {
 public:
  explicit RectiLoop(std::vector<RatPoint> vertices);

  const std::vector<RatPoint>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const RatPoint& vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }

  RectiLoop reversed() const;
  RectiLoop rotated(std::size_t shift) const;

  // Exact shoelace area (positive for counter-clockwise loops).
  Rational signed_area() const;
  // (left turns - right turns) / 4.
  int rotation_index() const;
  bool on_trace(const RatPoint& p) const;

  // Same cyclic corner sequence, up to the choice of starting corner.
  bool same_cycle(const RectiLoop& other) const;

  friend bool operator==(const RectiLoop&, const RectiLoop&) = default;

 private:
  std::vector<RatPoint> vertices_;
};

// Full grid refinement of a set of rectangles.
struct Arrangement {
  struct Face {
    RatRect rect;
    std::vector<std::size_t> containing;  // indices of input rectangles
  };
  struct Edge {
    RatPoint from;
    RatPoint to;
    std::vector<std::size_t> faces;  // one or two entries of `faces`
  };

  std::vector<Rational> xs;
  std::vector<Rational> ys;
  std::vector<Face> faces;
  std::vector<Edge> edges;
  std::vector<RatPoint> vertices;
};

Arrangement overlay(std::span<const RatRect> rects);

// Signed winding number of `loop` about `p`. Throws kPointOnCurve when p lies
// on the trace.
int winding_number(const RectiLoop& loop, const RatPoint& p);

struct WeightedRect {
  RatRect rect;
  int multiplicity;
};

// Grid cells of the loop's own arrangement with positive winding number.
// Throws kNegativeWinding if any cell has negative winding.
std::vector<WeightedRect> loop_region_decomposition(const RectiLoop& loop);

// Sorted, deduplicated copy.
std::vector<Rational> sorted_unique(std::vector<Rational> values);

}  // namespace rectsurf
