#include "generators.hpp"

#include <algorithm>
#include <set>

#include "rectsurf/error.hpp"
#include "rectsurf/morphism.hpp"

namespace rectsurf::testing {

namespace {

Rational half() { return Rational(1, 2); }

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

RatRect random_rect(Rng& rng, int denom) {
  const int span = 4 * denom;
  int a = uniform(rng, 0, span - 1), b = uniform(rng, 0, span - 1);
  int c = uniform(rng, a + 1, std::min(span, a + 2 * denom));
  int d = uniform(rng, b + 1, std::min(span, b + 2 * denom));
  return RatRect(Rational(a, denom), Rational(c, denom), Rational(b, denom), Rational(d, denom));
}

// Contact along a segment or an open set, not just a point.
bool shares_more_than_a_point(const RatRect& a, const RatRect& b) {
  if (!a.meets(b)) return false;
  const Rational w = std::min(a.x_hi(), b.x_hi()) - std::max(a.x_lo(), b.x_lo());
  const Rational h = std::min(a.y_hi(), b.y_hi()) - std::max(a.y_lo(), b.y_lo());
  return w > 0 || h > 0;
}

RatPoint strictly_inside(Rng& rng, const RatRect& r, int denom) {
  // A lattice point strictly inside, refining until one exists.
  for (int d = denom;; d *= 2) {
    const Rational x_lo = r.x_lo() * d, x_hi = r.x_hi() * d;
    const Rational y_lo = r.y_lo() * d, y_hi = r.y_hi() * d;
    mpz_class px0 = x_lo.get_num() / x_lo.get_den() + 1;
    mpz_class py0 = y_lo.get_num() / y_lo.get_den() + 1;
    Rational fx(px0, 1), fy(py0, 1);
    if (fx >= x_hi || fy >= y_hi) continue;
    std::vector<Rational> xs, ys;
    for (Rational v = fx; v < x_hi; v += 1) xs.push_back(v / d);
    for (Rational v = fy; v < y_hi; v += 1) ys.push_back(v / d);
    return {xs[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(xs.size()) - 1))],
            ys[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(ys.size()) - 1))]};
  }
}

}  // namespace

Rational rational_in(Rng& rng, const Rational& lo, const Rational& hi, int denom) {
  const Rational a = lo * denom, b = hi * denom;
  mpz_class lo_i = a.get_num() / a.get_den();
  if (Rational(lo_i, 1) < a) lo_i += 1;
  mpz_class hi_i = b.get_num() / b.get_den();
  if (Rational(hi_i, 1) > b) hi_i -= 1;
  if (hi_i < lo_i) return (lo + hi) / 2;
  const long lo_l = lo_i.get_si(), hi_l = hi_i.get_si();
  Rational r(std::uniform_int_distribution<long>(lo_l, hi_l)(rng), denom);
  r.canonicalize();
  return r;
}

Surface unit_square() { return square(0, 1, {half(), half()}); }

Surface square(const Rational& lo, const Rational& hi, const RatPoint& base) {
  return Surface({RatRect(lo, hi, lo, hi)}, {}, Anchor{0, base});
}

Surface square_annulus() {
  return Surface({RatRect(0, 3, 0, 1), RatRect(2, 3, 0, 3), RatRect(0, 3, 2, 3), RatRect(0, 1, 0, 3)},
                 {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, Anchor{0, {half(), half()}});
}

Surface staircase(int n) {
  const RatRect bars[4] = {RatRect(0, 3, 0, 1), RatRect(2, 3, 0, 3), RatRect(0, 3, 2, 3), RatRect(0, 1, 0, 3)};
  std::vector<RatRect> rects;
  std::vector<std::pair<int, int>> glue;
  for (int i = 0; i < n; ++i) {
    rects.push_back(bars[i % 4]);
    if (i > 0) glue.emplace_back(i - 1, i);
  }
  return Surface(rects, glue, Anchor{0, {half(), half()}});
}

std::optional<Surface> try_plane_union(Rng& rng, int n, int denom) {
  std::vector<RatRect> rects{random_rect(rng, denom)};
  for (int tries = 0; static_cast<int>(rects.size()) < n && tries < 200; ++tries) {
    const RatRect r = random_rect(rng, denom);
    if (std::any_of(rects.begin(), rects.end(), [&](const RatRect& o) { return o.overlaps(r); })) rects.push_back(r);
  }
  std::vector<std::pair<int, int>> glue;
  for (int i = 0; i < static_cast<int>(rects.size()); ++i) {
    for (int j = i + 1; j < static_cast<int>(rects.size()); ++j) {
      if (shares_more_than_a_point(rects[static_cast<std::size_t>(i)], rects[static_cast<std::size_t>(j)])) {
        glue.emplace_back(i, j);
      }
    }
  }
  Surface s(rects, glue, Anchor{0, strictly_inside(rng, rects.front(), denom * 2)});
  if (!validate(s).ok()) return std::nullopt;
  return s;
}

std::optional<Surface> try_chain(Rng& rng, int n, int denom) {
  std::vector<RatRect> rects{random_rect(rng, denom)};
  for (int tries = 0; static_cast<int>(rects.size()) < n && tries < 200; ++tries) {
    const RatRect r = random_rect(rng, denom);
    if (rects.back().overlaps(r)) rects.push_back(r);
  }
  std::vector<std::pair<int, int>> glue;
  for (int i = 1; i < static_cast<int>(rects.size()); ++i) glue.emplace_back(i - 1, i);
  for (int i = 0; i < static_cast<int>(rects.size()); ++i) {
    for (int j = i + 2; j < static_cast<int>(rects.size()); ++j) {
      if (rects[static_cast<std::size_t>(i)].overlaps(rects[static_cast<std::size_t>(j)]) && uniform(rng, 0, 3) == 0) {
        glue.emplace_back(i, j);
      }
    }
  }
  Surface s(rects, glue, Anchor{0, strictly_inside(rng, rects.front(), denom * 2)});
  if (!validate(s).ok()) return std::nullopt;
  return s;
}

std::optional<Surface> try_ring(Rng& rng, int n, int denom) {
  // Hole (x1, x2) x (y1, y2) inside the box (x0, x3) x (y0, y3).
  auto cuts = [&]() {
    std::vector<int> v;
    while (v.size() < 4) {
      const int c = uniform(rng, 0, 4 * denom);
      if (std::find(v.begin(), v.end(), c) == v.end()) v.push_back(c);
    }
    std::sort(v.begin(), v.end());
    std::vector<Rational> out;
    for (int c : v) out.push_back(Rational(c, denom));
    for (Rational& r : out) r.canonicalize();
    return out;
  };
  const auto x = cuts(), y = cuts();
  const RatRect bars[4] = {RatRect(x[0], x[3], y[0], y[1]), RatRect(x[2], x[3], y[0], y[3]),
                           RatRect(x[0], x[3], y[2], y[3]), RatRect(x[0], x[1], y[0], y[3])};
  const int shift = uniform(rng, 0, 3);
  std::vector<RatRect> rects;
  std::vector<std::pair<int, int>> glue;
  for (int i = 0; i < n; ++i) {
    rects.push_back(bars[(i + shift) % 4]);
    if (i > 0) glue.emplace_back(i - 1, i);
  }
  if (n >= 4 && n % 4 == 0 && uniform(rng, 0, 1) == 0) glue.emplace_back(0, n - 1);
  Surface s(rects, glue, Anchor{0, strictly_inside(rng, rects.front(), denom * 2)});
  if (!validate(s).ok()) return std::nullopt;
  return s;
}

std::optional<Surface> try_frame(Rng& rng, int k, int denom) {
  const int width = 2 * k + 1;
  std::vector<RatRect> rects;
  const Rational t(1, denom);
  const Rational h = Rational(uniform(rng, 2, 4), 1);
  rects.emplace_back(0, width, 0, t);
  rects.emplace_back(0, width, h / 2, h / 2 + t);
  rects.emplace_back(0, width, h - t, h);
  for (int i = 0; i <= k; ++i) rects.emplace_back(2 * i, 2 * i + 1, 0, h);
  std::vector<std::pair<int, int>> glue;
  for (int i = 0; i < static_cast<int>(rects.size()); ++i) {
    for (int j = i + 1; j < static_cast<int>(rects.size()); ++j) {
      if (rects[static_cast<std::size_t>(i)].overlaps(rects[static_cast<std::size_t>(j)])) glue.emplace_back(i, j);
    }
  }
  // Occasionally leave a crossing unglued: a slit sheet over the crossing.
  if (uniform(rng, 0, 2) == 0) glue.erase(glue.begin() + uniform(rng, 0, static_cast<int>(glue.size()) - 1));
  Surface s(rects, glue, Anchor{0, strictly_inside(rng, rects.front(), denom * 2)});
  if (!validate(s).ok()) return std::nullopt;
  return s;
}

Surface random_surface(Rng& rng, int max_rects, int denom) {
  for (;;) {
    const int n = uniform(rng, 1, max_rects);
    std::optional<Surface> s;
    switch (uniform(rng, 0, 5)) {
      case 0:
      case 1: s = try_plane_union(rng, n, denom); break;
      case 2:
      case 3: s = try_chain(rng, n, denom); break;
      case 4: s = try_ring(rng, n, denom); break;
      default:
        if (max_rects >= 5) s = try_frame(rng, uniform(rng, 1, (max_rects - 3) - 1 > 0 ? max_rects - 4 : 1), denom);
    }
    if (s && s->rect_count() <= max_rects) return *s;
  }
}

Surface random_disk(Rng& rng, int max_rects, int denom) {
  for (;;) {
    Surface s = random_surface(rng, max_rects, denom);
    if (is_disk(s)) return s;
  }
}

Surface random_sub_union(Rng& rng, const Surface& s) {
  for (int attempt = 0; attempt < 50; ++attempt) {
    const int n = s.rect_count();
    std::vector<int> keep{s.base().rect};
    std::vector<char> in(static_cast<std::size_t>(n), 0);
    in[static_cast<std::size_t>(s.base().rect)] = 1;
    for (std::size_t q = 0; q < keep.size(); ++q) {
      for (auto [a, b] : s.glue()) {
        const int other = a == keep[q] ? b : (b == keep[q] ? a : -1);
        if (other < 0 || in[static_cast<std::size_t>(other)]) continue;
        in[static_cast<std::size_t>(other)] = 1;
        if (uniform(rng, 0, 1) == 0) keep.push_back(other);
      }
    }
    std::sort(keep.begin(), keep.end());
    std::vector<int> index(static_cast<std::size_t>(n), -1);
    std::vector<RatRect> rects;
    for (int r : keep) {
      index[static_cast<std::size_t>(r)] = static_cast<int>(rects.size());
      rects.push_back(s.rects()[static_cast<std::size_t>(r)]);
    }
    std::vector<std::pair<int, int>> glue;
    for (auto [a, b] : s.glue()) {
      if (index[static_cast<std::size_t>(a)] >= 0 && index[static_cast<std::size_t>(b)] >= 0) {
        glue.emplace_back(index[static_cast<std::size_t>(a)], index[static_cast<std::size_t>(b)]);
      }
    }
    Surface sub(rects, glue, Anchor{index[static_cast<std::size_t>(s.base().rect)], s.base().point});
    if (!validate(sub).ok()) continue;
    try {
      place_sub_union(sub, s, false);
      return sub;
    } catch (const Error&) {
    }
  }
  return Surface({s.rects()[static_cast<std::size_t>(s.base().rect)]}, {}, Anchor{0, s.base().point});
}

SurfacePoint random_point(Rng& rng, const Surface& s, int denom) {
  const int r = uniform(rng, 0, s.rect_count() - 1);
  const RatRect& rect = s.rects()[static_cast<std::size_t>(r)];
  return {r, {rational_in(rng, rect.x_lo(), rect.x_hi(), denom), rational_in(rng, rect.y_lo(), rect.y_hi(), denom)}};
}

SurfacePoint random_interior_point(Rng& rng, const Surface& s, int denom) {
  const CellComplex& cx = s.complex();
  const auto faces = cx.classes_of_kind(CellKind::kFace);
  const int f = faces[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(faces.size()) - 1))];
  const auto [lo, hi] = cx.grid().footprint(cx.key(f));
  const RatPoint p = strictly_inside(rng, RatRect(lo.x, hi.x, lo.y, hi.y), denom);
  for (int r = 0; r < s.rect_count(); ++r) {
    if (cx.class_of(r, cx.key(f)) == f) return {r, p};
  }
  throw Error(ErrorCode::kInvalidSurface, "face class in no rectangle");
}

RectiLoop random_loop(Rng& rng, int m, int span) {
  for (;;) {
    std::vector<int> xs(static_cast<std::size_t>(m)), ys(static_cast<std::size_t>(m));
    for (int& x : xs) x = uniform(rng, 0, span);
    for (int& y : ys) y = uniform(rng, 0, span);
    bool ok = true;
    for (int i = 0; i < m; ++i) {
      if (xs[static_cast<std::size_t>(i)] == xs[static_cast<std::size_t>((i + 1) % m)] ||
          ys[static_cast<std::size_t>(i)] == ys[static_cast<std::size_t>((i + 1) % m)]) {
        ok = false;
      }
    }
    if (!ok) continue;
    std::vector<RatPoint> vs;
    for (int i = 0; i < m; ++i) {
      vs.push_back({xs[static_cast<std::size_t>(i)], ys[static_cast<std::size_t>(i)]});
      vs.push_back({xs[static_cast<std::size_t>((i + 1) % m)], ys[static_cast<std::size_t>(i)]});
    }
    return RectiLoop(vs);
  }
}

}  // namespace rectsurf::testing
