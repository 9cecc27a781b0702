#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rectsurf/geom.hpp"
#include "rectsurf/morphism.hpp"
#include "rectsurf/surface.hpp"

namespace rectsurf {

// Disk surfaces whose boundary develops to `loop`, one per isomorphism class.
// Each disk is anchored at the center of the face to the left of the loop's
// first edge. Empty when some winding number is negative.
std::vector<Surface> disks_bounded_by(const RectiLoop& loop);

// `k` together with the complementary components of `k` in `s` that stay away
// from the boundary of `s`. `k` is drawn in the coordinates of `s`. Throws
// kNotContainedInS when the result is not a disk.
Surface smallest_closed_disk(const Surface& s, const Surface& k);

// Same filling for an open sub-union `u`; the result is open.
Surface smallest_open_disk(const Surface& s, const Surface& u);

// The quotients of k's presentation by supergraphs of its gluing graph that
// are valid surfaces, up to isomorphism. Starts with k itself.
std::vector<Surface> immersed_images(const Surface& k);

// For an open disk or punctured disk `u`: the legal disks among the fusions of
// u's closure with the disks bounded by its outer boundary, as open surfaces.
std::vector<Surface> smallest_open_disks_of_embeddings(const Surface& u);

// A closed rational union K2 with k1 inside its interior and K2 inside the
// interior of k3, in k1's normalized coordinates. `witness` defaults to the
// embedding of k1 into the interior of k3. Throws kPreconditionViolated when
// there is no such embedding.
Surface nested_rational_union(const Surface& k1, const Surface& k3,
                              const std::optional<ImmersionMap>& witness = std::nullopt);

// Thicken corner-only contacts of `k` inside `host` (same coordinates) until
// no boundary vertex is pinched. Returns k unchanged when there are none.
Surface repair_butterflies(const Surface& host, const Surface& k);

// Isomorphism classes of valid closed unions of at most `max_rects`
// rectangles with corners in [-window, window]^2 whose coordinates have
// denominators at most `denom_bound`, basepoint at the origin. Classes come
// out by number of rectangles, then in presentation order; none repeats.
class SubbasisStream {
 public:
  SubbasisStream(int max_rects, int denom_bound, int window = 1);

  std::optional<Surface> next();

 private:
  void fill_stratum();
  bool is_new(const Surface& s);

  int max_rects_;
  std::vector<RatRect> all_;
  std::vector<std::size_t> based_;  // indices of rectangles containing the origin
  int stratum_ = 0;
  std::vector<Surface> pending_;
  std::size_t cursor_ = 0;
  std::map<std::string, std::vector<Surface>> buckets_;
};

std::vector<Surface> enumerate_subbasis(int max_rects, int denom_bound, int window = 1);

// Coarse isomorphism invariant: Euler characteristic, developed boundary
// loops up to rotation, and area with multiplicity.
std::string invariant_key(const Surface& s);

}  // namespace rectsurf
