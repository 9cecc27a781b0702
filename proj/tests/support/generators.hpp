#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "rectsurf/geom.hpp"
#include "rectsurf/surface.hpp"

namespace rectsurf::testing {

using Rng = std::mt19937_64;

Rational rational_in(Rng& rng, const Rational& lo, const Rational& hi, int denom);

// Named fixtures.
Surface unit_square();
Surface square(const Rational& lo, const Rational& hi, const RatPoint& base);
// Four 3x1 / 1x3 bars around the hole (1,2)^2, closed up into an annulus.
Surface square_annulus();
// n bars winding around the hole, each glued only to the previous one. Nine
// bars wind more than twice around.
Surface staircase(int n);

// Rectangles inside [0, 4]^2 with corners on the 1/denom lattice, each meeting
// an earlier one; glued wherever they share more than a point. Embedded in
// the plane when it validates.
std::optional<Surface> try_plane_union(Rng& rng, int n, int denom);
// Each rectangle overlaps and is glued to the previous one; extra overlapping
// pairs are glued with probability 1/4. Often multi-sheeted.
std::optional<Surface> try_chain(Rng& rng, int n, int denom);
// Bars around a random hole, each glued to the previous one, sometimes closed
// up: staircases, annuli and their double covers.
std::optional<Surface> try_ring(Rng& rng, int n, int denom);
// A plane frame of three horizontal bars crossed by k + 1 vertical bars:
// a union with 2k holes when fully glued.
std::optional<Surface> try_frame(Rng& rng, int k, int denom);
// A valid surface with 1..max_rects rectangles; basepoint strictly inside
// rectangle 0.
Surface random_surface(Rng& rng, int max_rects, int denom = 2);
Surface random_disk(Rng& rng, int max_rects, int denom = 2);

// Rectangles of s reachable from the base rectangle through the gluing graph,
// each kept with probability 1/2; the result embeds in s. Same coordinates.
Surface random_sub_union(Rng& rng, const Surface& s);

// A point of s (anchor in some rectangle) on the 1/denom lattice.
SurfacePoint random_point(Rng& rng, const Surface& s, int denom = 8);
// A point in the open interior of a random face class.
SurfacePoint random_interior_point(Rng& rng, const Surface& s, int denom = 8);

// Alternating loop with 2m corners, integer coordinates in [0, span].
RectiLoop random_loop(Rng& rng, int m, int span);

}  // namespace rectsurf::testing
