#include "rectsurf/geom.hpp"

#include <algorithm>
#include <map>

#include "rectsurf/error.hpp"

namespace rectsurf {

RatRect::RatRect(Rational x_lo, Rational x_hi, Rational y_lo, Rational y_hi)
    : x_lo_(std::move(x_lo)), x_hi_(std::move(x_hi)), y_lo_(std::move(y_lo)), y_hi_(std::move(y_hi)) {
  x_lo_.canonicalize();
  x_hi_.canonicalize();
  y_lo_.canonicalize();
  y_hi_.canonicalize();
  if (!(x_lo_ < x_hi_) || !(y_lo_ < y_hi_)) {
    throw Error(ErrorCode::kMalformedInput, "degenerate rectangle [" + format_rational(x_lo_) + "," +
                                                format_rational(x_hi_) + "]x[" + format_rational(y_lo_) +
                                                "," + format_rational(y_hi_) + "]");
  }
}

bool operator<(const RatRect& a, const RatRect& b) {
  if (int c = cmp(a.x_lo_, b.x_lo_)) return c < 0;
  if (int c = cmp(a.x_hi_, b.x_hi_)) return c < 0;
  if (int c = cmp(a.y_lo_, b.y_lo_)) return c < 0;
  return a.y_hi_ < b.y_hi_;
}

std::vector<Rational> sorted_unique(std::vector<Rational> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

// ---------------------------------------------------------------------------
// RectiLoop

RectiLoop::RectiLoop(std::vector<RatPoint> vertices) : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  if (n < 4 || n % 2 != 0) {
    throw Error(ErrorCode::kMalformedInput, "rectilinear loop needs an even number (>= 4) of corners");
  }
  std::optional<bool> previous_horizontal;
  for (std::size_t i = 0; i < n; ++i) {
    const RatPoint& a = vertices_[i];
    const RatPoint& b = vertices_[(i + 1) % n];
    const bool dx = a.x != b.x;
    const bool dy = a.y != b.y;
    if (dx == dy) {
      throw Error(ErrorCode::kMalformedInput,
                  "loop edge " + format_point(a) + " -> " + format_point(b) + " is not axis-parallel");
    }
    if (previous_horizontal && *previous_horizontal == dx) {
      throw Error(ErrorCode::kMalformedInput, "loop edge directions must alternate at corner " + format_point(a));
    }
    previous_horizontal = dx;
  }
}

RectiLoop RectiLoop::reversed() const {
  std::vector<RatPoint> v(vertices_.rbegin(), vertices_.rend());
  return RectiLoop(std::move(v));
}

RectiLoop RectiLoop::rotated(std::size_t shift) const {
  std::vector<RatPoint> v(vertices_);
  std::rotate(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(shift % v.size()), v.end());
  return RectiLoop(std::move(v));
}

Rational RectiLoop::signed_area() const {
  Rational twice = 0;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const RatPoint& a = vertices_[i];
    const RatPoint& b = vertices_[(i + 1) % n];
    twice += a.x * b.y - b.x * a.y;
  }
  return twice / 2;
}

int RectiLoop::rotation_index() const {
  const std::size_t n = vertices_.size();
  int turns = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const RatPoint d1 = vertex(i + 1) - vertex(i);
    const RatPoint d2 = vertex(i + 2) - vertex(i + 1);
    const Rational cross = d1.x * d2.y - d1.y * d2.x;
    turns += sgn(cross);
  }
  return turns / 4;
}

bool RectiLoop::on_trace(const RatPoint& p) const {
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const RatPoint& a = vertices_[i];
    const RatPoint& b = vertices_[(i + 1) % n];
    if (a.y == b.y) {
      if (p.y == a.y && std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x)) return true;
    } else {
      if (p.x == a.x && std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y)) return true;
    }
  }
  return false;
}

bool RectiLoop::same_cycle(const RectiLoop& other) const {
  const std::size_t n = vertices_.size();
  if (other.size() != n) return false;
  for (std::size_t s = 0; s < n; ++s) {
    bool match = true;
    for (std::size_t i = 0; i < n && match; ++i) match = vertices_[i] == other.vertex(i + s);
    if (match) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Arrangement

Arrangement overlay(std::span<const RatRect> rects) {
  Arrangement out;
  std::vector<Rational> xs, ys;
  for (const RatRect& r : rects) {
    xs.push_back(r.x_lo());
    xs.push_back(r.x_hi());
    ys.push_back(r.y_lo());
    ys.push_back(r.y_hi());
  }
  out.xs = sorted_unique(std::move(xs));
  out.ys = sorted_unique(std::move(ys));
  const std::size_t nx = out.xs.size();
  const std::size_t ny = out.ys.size();
  if (nx < 2 || ny < 2) return out;

  std::vector<long> face_at((nx - 1) * (ny - 1), -1);
  for (std::size_t i = 0; i + 1 < nx; ++i) {
    for (std::size_t j = 0; j + 1 < ny; ++j) {
      RatRect cell(out.xs[i], out.xs[i + 1], out.ys[j], out.ys[j + 1]);
      std::vector<std::size_t> containing;
      for (std::size_t k = 0; k < rects.size(); ++k) {
        if (rects[k].contains(cell)) containing.push_back(k);
      }
      if (containing.empty()) continue;
      face_at[i * (ny - 1) + j] = static_cast<long>(out.faces.size());
      out.faces.push_back({std::move(cell), std::move(containing)});
    }
  }
  auto face = [&](long i, long j) -> long {
    if (i < 0 || j < 0 || i + 1 >= static_cast<long>(nx) || j + 1 >= static_cast<long>(ny)) return -1;
    return face_at[static_cast<std::size_t>(i) * (ny - 1) + static_cast<std::size_t>(j)];
  };
  std::map<RatPoint, bool> vertex_seen;
  auto add_edge = [&](RatPoint a, RatPoint b, long f1, long f2) {
    Arrangement::Edge e{a, b, {}};
    if (f1 >= 0) e.faces.push_back(static_cast<std::size_t>(f1));
    if (f2 >= 0) e.faces.push_back(static_cast<std::size_t>(f2));
    if (e.faces.empty()) return;
    vertex_seen.emplace(a, true);
    vertex_seen.emplace(b, true);
    out.edges.push_back(std::move(e));
  };
  for (long i = 0; i + 1 < static_cast<long>(nx); ++i) {
    for (long j = 0; j < static_cast<long>(ny); ++j) {
      add_edge({out.xs[i], out.ys[j]}, {out.xs[i + 1], out.ys[j]}, face(i, j - 1), face(i, j));
    }
  }
  for (long i = 0; i < static_cast<long>(nx); ++i) {
    for (long j = 0; j + 1 < static_cast<long>(ny); ++j) {
      add_edge({out.xs[i], out.ys[j]}, {out.xs[i], out.ys[j + 1]}, face(i - 1, j), face(i, j));
    }
  }
  for (auto& [p, _] : vertex_seen) out.vertices.push_back(p);
  return out;
}

// ---------------------------------------------------------------------------
// Winding numbers

int winding_number(const RectiLoop& loop, const RatPoint& p) {
  if (loop.on_trace(p)) {
    throw Error(ErrorCode::kPointOnCurve, "point " + format_point(p) + " lies on the loop");
  }
  int w = 0;
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) {
    const RatPoint& a = loop.vertex(i);
    const RatPoint& b = loop.vertex(i + 1);
    if (a.x != b.x || a.x <= p.x) continue;  // vertical edges right of p only
    if (a.y <= p.y && p.y < b.y) ++w;
    else if (b.y <= p.y && p.y < a.y) --w;
  }
  return w;
}

std::vector<WeightedRect> loop_region_decomposition(const RectiLoop& loop) {
  std::vector<Rational> xs, ys;
  for (const RatPoint& v : loop.vertices()) {
    xs.push_back(v.x);
    ys.push_back(v.y);
  }
  xs = sorted_unique(std::move(xs));
  ys = sorted_unique(std::move(ys));
  std::vector<WeightedRect> out;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
      const RatPoint center{(xs[i] + xs[i + 1]) / 2, (ys[j] + ys[j + 1]) / 2};
      const int w = winding_number(loop, center);
      if (w < 0) {
        throw Error(ErrorCode::kNegativeWinding, "winding number " + std::to_string(w) + " at " + format_point(center));
      }
      if (w > 0) out.push_back({RatRect(xs[i], xs[i + 1], ys[j], ys[j + 1]), w});
    }
  }
  return out;
}

}  // namespace rectsurf
