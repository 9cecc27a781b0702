#pragma once

#include <string>
#include <string_view>

#include "rectsurf/geom.hpp"
#include "rectsurf/surface.hpp"

namespace rectsurf {

inline constexpr int kDocumentVersion = 1;

// Surface document: {"base": {"rect", "x", "y"}, "glue": [[i, j], ...],
// "open": bool, "rects": [[x_lo, x_hi, y_lo, y_hi], ...], "version": 1} with
// rationals as "p/q" strings. Keys are sorted; output is deterministic.
std::string surface_to_json(const Surface& s, int indent = 2);
// Throws kMalformedInput. Does not validate the surface.
Surface surface_from_json(std::string_view text);

// Loop document: {"version": 1, "vertices": [["x", "y"], ...]}.
std::string loop_to_json(const RectiLoop& loop, int indent = 2);
RectiLoop loop_from_json(std::string_view text);

std::string read_file(const std::string& path);

// Developed image: translucent faces (darker where more sheets overlap), one
// polygon per boundary loop, and a marker at the basepoint.
std::string render_svg(const Surface& s);

}  // namespace rectsurf
