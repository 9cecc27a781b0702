#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rectsurf/complex.hpp"
#include "rectsurf/surface.hpp"

namespace rectsurf {

// Linear map fixing the origin with one nonzero rational entry per row and
// column: a signed permutation times a positive diagonal.
class AxisAffine {
 public:
  // (x, y) -> (a * x + b * y, c * x + d * y)
  AxisAffine(Rational a, Rational b, Rational c, Rational d);
  // Signed permutation `index` in [0, 8) after the diagonal diag(dx, dy).
  static AxisAffine from_parts(int index, Rational dx, Rational dy);
  static AxisAffine identity() { return AxisAffine(1, 0, 0, 1); }

  RatPoint apply(const RatPoint& p) const { return {a_ * p.x + b_ * p.y, c_ * p.x + d_ * p.y}; }
  RatRect apply(const RatRect& r) const;
  // this ∘ inner
  AxisAffine compose(const AxisAffine& inner) const;
  AxisAffine inverse() const;
  bool reverses_orientation() const { return a_ * d_ - b_ * c_ < 0; }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Rational& c() const { return c_; }
  const Rational& d() const { return d_; }

  friend bool operator==(const AxisAffine&, const AxisAffine&) = default;

 private:
  Rational a_, b_, c_, d_;
};

// Parses "a,b,c,d" (matrix rows) or "perm:dx,dy" with perm in 0..7.
AxisAffine parse_axis_affine(std::string_view text);

Surface act(const AxisAffine& h, const Surface& s);
std::pair<Surface, SurfacePoint> act_pointed(const AxisAffine& h, const Surface& s, const SurfacePoint& p);

// The translation isomorphism P -> P^p. Class numbering is preserved.
struct BasepointMap {
  RatPoint offset;  // dev(p)

  SurfacePoint apply(const SurfacePoint& q) const { return {q.rect, q.point - offset}; }
  int apply_class(int cls) const { return cls; }
};

std::pair<Surface, BasepointMap> rebase(const Surface& s, const SurfacePoint& p);

// A positive square root of a rational, kept exact.
struct ERValue {
  Rational squared;
  std::optional<Rational> exact;  // when the root is rational

  static ERValue from_squared(Rational squared);
  double approx() const;
  std::string to_string() const;
  friend bool operator==(const ERValue& a, const ERValue& b) { return a.squared == b.squared; }
  friend bool operator<(const ERValue& a, const ERValue& b) { return a.squared < b.squared; }
};

// Radius of the largest open ball about p that lifts into the interior. Zero
// on the boundary.
ERValue embedding_radius(const Surface& s, const SurfacePoint& p);
// Minimum over a closed sub-union k, drawn in s's coordinates. Throws
// kKTouchesBoundary when k meets the boundary of s.
ERValue min_embedding_radius(const Surface& s, const Surface& k);

// The open ball about p of radius r lifted into s.
class BallChart {
 public:
  BallChart(Surface s, SurfacePoint center, Rational radius, std::vector<int> cells);

  const SurfacePoint& center() const { return center_; }
  const Rational& radius() const { return radius_; }
  // Classes of s's own complex meeting the ball.
  const std::vector<int>& cells() const { return cells_; }
  // Surface point developing to dev(center) + v, for |v| < radius.
  std::optional<SurfacePoint> lift(const RatPoint& v) const;

 private:
  Surface surface_;
  SurfacePoint center_;
  Rational radius_;
  std::vector<int> cells_;
};

// Throws kRadiusTooLarge when r exceeds the embedding radius at p.
BallChart ball_embed(const Surface& s, const SurfacePoint& p, const Rational& r);

// Builds the embedding k -> s^p pointwise from ball charts and checks it
// against find_immersion. Requires d(o, p) < min_embedding_radius(s, k).
bool perturb_embed_check(const Surface& s, const Surface& k, const SurfacePoint& p);

// Class reached by continuing the straight segment from `from` (a point of
// class `cls`) to `to` through cx, or -1 if it leaves the surface.
int walk_segment(const CellComplex& cx, int cls, const RatPoint& from, const RatPoint& to);

// Shortest path length in the flat path metric, as a sum of square roots.
struct PathLength {
  std::vector<Rational> squared_legs;
  double approx = 0;

  bool single_segment() const { return squared_legs.size() == 1; }
};

// Intrinsic metric of a surface; shortest paths bend only at reflex
// boundary corners.
class IntrinsicMetric {
 public:
  explicit IntrinsicMetric(Surface s);

  // nullopt when q is not reachable (never for valid surfaces).
  std::optional<PathLength> distance(const SurfacePoint& p, const SurfacePoint& q) const;
  const Surface& surface() const { return surface_; }

 private:
  Surface surface_;
  std::vector<int> corners_;                                // reflex vertex classes
  std::vector<std::vector<std::optional<Rational>>> legs_;  // squared corner-to-corner segments
};

// Exact check of |ER(p) - ER(q)| <= d(p, q).
bool lipschitz_holds(const ERValue& er_p, const ERValue& er_q, const PathLength& d);

}  // namespace rectsurf
