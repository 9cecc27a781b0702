#include "rectsurf/transform.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <queue>

#include "fan.hpp"
#include "rectsurf/error.hpp"
#include "rectsurf/morphism.hpp"

namespace rectsurf {

// ---------------------------------------------------------------------------
// AxisAffine

AxisAffine::AxisAffine(Rational a, Rational b, Rational c, Rational d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  const bool diagonal = b_ == 0 && c_ == 0 && a_ != 0 && d_ != 0;
  const bool anti = a_ == 0 && d_ == 0 && b_ != 0 && c_ != 0;
  if (!diagonal && !anti) {
    throw Error(ErrorCode::kPreconditionViolated, "map is not a signed permutation times a diagonal");
  }
}

AxisAffine AxisAffine::from_parts(int index, Rational dx, Rational dy) {
  if (index < 0 || index >= 8) throw Error(ErrorCode::kPreconditionViolated, "signed permutation index out of range");
  if (dx <= 0 || dy <= 0) throw Error(ErrorCode::kPreconditionViolated, "diagonal scaling must be positive");
  const bool swap = index & 1;
  const int sx = (index & 2) ? -1 : 1;
  const int sy = (index & 4) ? -1 : 1;
  if (!swap) return AxisAffine(sx * dx, 0, 0, sy * dy);
  return AxisAffine(0, sx * dy, sy * dx, 0);
}

RatRect AxisAffine::apply(const RatRect& r) const {
  const RatPoint p = apply(RatPoint{r.x_lo(), r.y_lo()});
  const RatPoint q = apply(RatPoint{r.x_hi(), r.y_hi()});
  return RatRect(std::min(p.x, q.x), std::max(p.x, q.x), std::min(p.y, q.y), std::max(p.y, q.y));
}

AxisAffine AxisAffine::compose(const AxisAffine& in) const {
  return AxisAffine(a_ * in.a_ + b_ * in.c_, a_ * in.b_ + b_ * in.d_, c_ * in.a_ + d_ * in.c_,
                    c_ * in.b_ + d_ * in.d_);
}

AxisAffine AxisAffine::inverse() const {
  if (b_ == 0) return AxisAffine(1 / a_, 0, 0, 1 / d_);
  return AxisAffine(0, 1 / c_, 1 / b_, 0);
}

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

AxisAffine parse_axis_affine(std::string_view text) {
  const std::size_t colon = text.find(':');
  if (colon != std::string_view::npos) {
    const auto scale = split(text.substr(colon + 1), ',');
    const Rational idx = parse_rational(text.substr(0, colon));
    if (scale.size() != 2 || idx.get_den() != 1) throw Error(ErrorCode::kMalformedInput, "expected perm:dx,dy");
    return AxisAffine::from_parts(static_cast<int>(idx.get_num().get_si()), parse_rational(scale[0]),
                                  parse_rational(scale[1]));
  }
  const auto parts = split(text, ',');
  if (parts.size() != 4) throw Error(ErrorCode::kMalformedInput, "expected a,b,c,d");
  return AxisAffine(parse_rational(parts[0]), parse_rational(parts[1]), parse_rational(parts[2]),
                    parse_rational(parts[3]));
}

Surface act(const AxisAffine& h, const Surface& s) {
  std::vector<RatRect> rects;
  rects.reserve(s.rects().size());
  for (const RatRect& r : s.rects()) rects.push_back(h.apply(r));
  return Surface(std::move(rects), s.glue(), Anchor{s.base().rect, h.apply(s.base().point)}, s.is_open());
}

std::pair<Surface, SurfacePoint> act_pointed(const AxisAffine& h, const Surface& s, const SurfacePoint& p) {
  const RatPoint image = h.apply(dev(s, p));
  return {act(h, s), SurfacePoint{p.rect, image}};
}

std::pair<Surface, BasepointMap> rebase(const Surface& s, const SurfacePoint& p) {
  const RatPoint offset = dev(s, p);
  Surface moved = translated(s, RatPoint{-offset.x, -offset.y});
  return {moved.with_base(Anchor{p.rect, RatPoint{0, 0}}), BasepointMap{offset}};
}

// ---------------------------------------------------------------------------
// Embedding radii

ERValue ERValue::from_squared(Rational squared) {
  ERValue v{std::move(squared), std::nullopt};
  const mpz_class& num = v.squared.get_num();
  const mpz_class& den = v.squared.get_den();
  if (v.squared >= 0 && mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
    v.exact = Rational(sqrt(num), sqrt(den));
    v.exact->canonicalize();
  }
  return v;
}

double ERValue::approx() const { return exact ? exact->get_d() : std::sqrt(squared.get_d()); }

std::string ERValue::to_string() const {
  return exact ? format_rational(*exact) : "sqrt(" + format_rational(squared) + ")";
}

namespace {

struct BallGrowth {
  Rational er_squared;
  bool hit_boundary = false;
};

// Grows the lifted ball about p in order of the radius needed to reach each
// cell; stops at the first boundary cell.
BallGrowth grow_ball(const CellComplex& cx, int start, const RatPoint& p) {
  using Item = std::pair<Rational, int>;
  auto later = [](const Item& x, const Item& y) { return x.first > y.first; };
  std::priority_queue<Item, std::vector<Item>, decltype(later)> queue(later);
  std::vector<char> done(static_cast<std::size_t>(cx.class_count()), 0);
  const Grid& g = cx.grid();
  queue.emplace(Rational(0), start);
  while (!queue.empty()) {
    Item top = queue.top();
    queue.pop();
    const int c = top.second;
    if (done[static_cast<std::size_t>(c)]) continue;
    done[static_cast<std::size_t>(c)] = 1;
    if (cx.is_boundary(c)) return {top.first, true};
    auto push = [&](int d) {
      if (done[static_cast<std::size_t>(d)]) return;
      Rational key = g.squared_distance(p, cx.key(d));
      if (key < top.first) key = top.first;
      queue.emplace(std::move(key), d);
    };
    for (int d : cx.up(c)) push(d);
    for (int d : cx.down(c)) push(d);
  }
  return {Rational(0), false};
}

int point_class(const Surface& s, const SurfacePoint& p) {
  if (p.rect < 0 || p.rect >= s.rect_count() || !s.rects()[static_cast<std::size_t>(p.rect)].contains(p.point)) {
    throw Error(ErrorCode::kInvalidPoint, "point " + format_point(p.point) + " not in rectangle " + std::to_string(p.rect));
  }
  return anchor_class(s.complex(), p);
}

}  // namespace

ERValue embedding_radius(const Surface& s, const SurfacePoint& p) {
  const int c = point_class(s, p);
  if (c < 0) throw Error(ErrorCode::kInvalidPoint, "point " + format_point(p.point) + " is not a cell of its rectangle");
  const BallGrowth g = grow_ball(s.complex(), c, p.point);
  if (!g.hit_boundary) throw Error(ErrorCode::kInvalidSurface, "surface has no boundary");
  return ERValue::from_squared(g.er_squared);
}

ERValue min_embedding_radius(const Surface& s, const Surface& k) {
  const ImmersionMap m = place_sub_union(k.with_open(false), s.with_open(false), false);
  const CellComplex& sc = m.target_complex();
  const CellComplex& kc = m.source_complex();
  std::optional<ERValue> best;
  for (int c = 0; c < kc.class_count(); ++c) {
    const int t = m.image(c);
    if (sc.is_boundary(t)) throw Error(ErrorCode::kKTouchesBoundary, "sub-union meets the boundary of the surface");
    if (kc.kind(c) != CellKind::kVertex) continue;
    const SurfacePoint at{sc.members(t)[0], kc.grid().footprint(kc.key(c)).first};
    ERValue v = embedding_radius(s, at);
    if (!best || v < *best) best = std::move(v);
  }
  return *best;
}

BallChart::BallChart(Surface s, SurfacePoint center, Rational radius, std::vector<int> cells)
    : surface_(std::move(s)), center_(std::move(center)), radius_(std::move(radius)), cells_(std::move(cells)) {}

std::optional<SurfacePoint> BallChart::lift(const RatPoint& v) const {
  if (squared_norm(v) >= radius_ * radius_) return std::nullopt;
  const RatPoint x = center_.point + v;
  const CellComplex& cx = surface_.complex();
  const auto key = cx.grid().locate(x);
  if (!key) return std::nullopt;
  for (int c : cells_) {
    if (cx.key(c) == *key) return SurfacePoint{cx.members(c)[0], x};
  }
  return std::nullopt;
}

BallChart ball_embed(const Surface& s, const SurfacePoint& p, const Rational& r) {
  if (r <= 0) throw Error(ErrorCode::kPreconditionViolated, "radius must be positive");
  const ERValue er = embedding_radius(s, p);
  if (r * r > er.squared) {
    throw Error(ErrorCode::kRadiusTooLarge, "radius " + format_rational(r) + " exceeds embedding radius " + er.to_string());
  }
  const CellComplex& cx = s.complex();
  const Rational r2 = r * r;
  const int start = point_class(s, p);
  std::vector<char> seen(static_cast<std::size_t>(cx.class_count()), 0);
  std::vector<int> cells{start};
  seen[static_cast<std::size_t>(start)] = 1;
  for (std::size_t head = 0; head < cells.size(); ++head) {
    const int c = cells[head];
    auto visit = [&](int d) {
      if (seen[static_cast<std::size_t>(d)] || cx.grid().squared_distance(p.point, cx.key(d)) >= r2) return;
      seen[static_cast<std::size_t>(d)] = 1;
      cells.push_back(d);
    };
    for (int d : cx.up(c)) visit(d);
    for (int d : cx.down(c)) visit(d);
  }
  std::sort(cells.begin(), cells.end());
  return BallChart(s, p, r, std::move(cells));
}

// ---------------------------------------------------------------------------
// Segments and distances

int walk_segment(const CellComplex& cx, int cls, const RatPoint& from, const RatPoint& to) {
  const Grid& g = cx.grid();
  std::vector<Rational> ts;
  auto crossings = [&](const std::vector<Rational>& lines, const Rational& a, const Rational& b) {
    if (a == b) return;
    const Rational lo = a < b ? a : b, hi = a < b ? b : a;
    auto it = std::upper_bound(lines.begin(), lines.end(), lo);
    for (; it != lines.end() && *it < hi; ++it) ts.push_back((*it - a) / (b - a));
  };
  crossings(g.xs(), from.x, to.x);
  crossings(g.ys(), from.y, to.y);
  ts.push_back(1);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  auto at = [&](const Rational& t) { return RatPoint{from.x + t * (to.x - from.x), from.y + t * (to.y - from.y)}; };
  int cur = cls;
  auto step = [&](const RatPoint& p) -> bool {
    const auto key = g.locate(p);
    if (!key) return false;
    cur = cx.neighbor(cur, *key);
    return cur >= 0;
  };
  Rational prev = 0;
  for (const Rational& t : ts) {
    if (!step(at((prev + t) / 2)) || !step(at(t))) return -1;
    prev = t;
  }
  return cur;
}

namespace {

bool is_reflex_corner(const CellComplex& cx, int v) {
  if (cx.kind(v) != CellKind::kVertex || cx.is_interior(v)) return false;
  int faces = 0;
  for (int d : cx.up(v)) faces += cx.kind(d) == CellKind::kFace ? 1 : 0;
  return faces == 3;
}

}  // namespace

IntrinsicMetric::IntrinsicMetric(Surface s) : surface_(std::move(s)) {
  const CellComplex& cx = surface_.complex();
  for (int c = 0; c < cx.class_count(); ++c) {
    if (is_reflex_corner(cx, c)) corners_.push_back(c);
  }
  const std::size_t n = corners_.size();
  legs_.assign(n, std::vector<std::optional<Rational>>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const RatPoint pi = cx.grid().footprint(cx.key(corners_[i])).first;
    for (std::size_t j = i + 1; j < n; ++j) {
      const RatPoint pj = cx.grid().footprint(cx.key(corners_[j])).first;
      if (walk_segment(cx, corners_[i], pi, pj) == corners_[j]) {
        legs_[i][j] = legs_[j][i] = squared_norm(pj - pi);
      }
    }
  }
}

std::optional<PathLength> IntrinsicMetric::distance(const SurfacePoint& p, const SurfacePoint& q) const {
  const CellComplex& cx = surface_.complex();
  const int cp = point_class(surface_, p);
  const int cq = point_class(surface_, q);
  if (cp == cq && p.point == q.point) return PathLength{};

  const std::size_t n = corners_.size();
  // Nodes: 0 = p, 1..n corners, n + 1 = q.
  const std::size_t total = n + 2;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> adj(total);
  auto link = [&](std::size_t a, std::size_t b, const Rational& w) {
    adj[a].emplace_back(b, w);
    adj[b].emplace_back(a, w);
  };
  if (walk_segment(cx, cp, p.point, q.point) == cq) link(0, n + 1, squared_norm(q.point - p.point));
  for (std::size_t i = 0; i < n; ++i) {
    const RatPoint pi = cx.grid().footprint(cx.key(corners_[i])).first;
    if (walk_segment(cx, cp, p.point, pi) == corners_[i]) link(0, i + 1, squared_norm(pi - p.point));
    if (walk_segment(cx, cq, q.point, pi) == corners_[i]) link(n + 1, i + 1, squared_norm(pi - q.point));
    for (std::size_t j = i + 1; j < n; ++j) {
      if (legs_[i][j]) link(i + 1, j + 1, *legs_[i][j]);
    }
  }

  std::vector<double> dist(total, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> prev(total, total);
  std::vector<Rational> prev_leg(total);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[0] = 0;
  queue.emplace(0.0, 0);
  while (!queue.empty()) {
    auto [d, u] = queue.top();
    queue.pop();
    if (d > dist[u]) continue;
    for (const auto& [v, w] : adj[u]) {
      const double nd = d + std::sqrt(w.get_d());
      if (nd < dist[v]) {
        dist[v] = nd;
        prev[v] = u;
        prev_leg[v] = w;
        queue.emplace(nd, v);
      }
    }
  }
  if (prev[n + 1] == total) return std::nullopt;
  PathLength out;
  out.approx = dist[n + 1];
  for (std::size_t v = n + 1; v != 0; v = prev[v]) out.squared_legs.push_back(prev_leg[v]);
  std::reverse(out.squared_legs.begin(), out.squared_legs.end());
  return out;
}

bool lipschitz_holds(const ERValue& er_p, const ERValue& er_q, const PathLength& d) {
  const Rational& hi = er_p.squared < er_q.squared ? er_q.squared : er_p.squared;
  const Rational& lo = er_p.squared < er_q.squared ? er_p.squared : er_q.squared;
  if (d.squared_legs.empty()) return hi == lo;
  if (d.single_segment()) {
    // sqrt(hi) - sqrt(lo) <= sqrt(c)  <=>  hi - lo - c <= 2 sqrt(lo c)
    const Rational& c = d.squared_legs.front();
    const Rational t = hi - lo - c;
    return t <= 0 || t * t <= 4 * lo * c;
  }
  // Interior legs end at boundary corners, where ER vanishes.
  return er_p.squared <= d.squared_legs.front() && er_q.squared <= d.squared_legs.back();
}

// ---------------------------------------------------------------------------
// Perturbation

namespace {

Grid shifted(const Grid& g, const RatPoint& v) {
  std::vector<Rational> xs(g.xs()), ys(g.ys());
  for (auto& x : xs) x += v.x;
  for (auto& y : ys) y += v.y;
  return Grid(std::move(xs), std::move(ys));
}

}  // namespace

bool perturb_embed_check(const Surface& s, const Surface& k, const SurfacePoint& p) {
  const RatPoint o = s.base().point;
  const Surface sn = normalize(s.with_open(false));
  const Surface kn = translated(k.with_open(false), RatPoint{-o.x, -o.y});
  const SurfacePoint pn{p.rect, p.point - o};
  const RatPoint v = pn.point;

  const ERValue eps = min_embedding_radius(sn, kn);
  const int pc = point_class(sn, pn);
  if (squared_norm(v) >= eps.squared ||
      walk_segment(sn.complex(), anchor_class(sn.complex(), sn.base()), RatPoint{0, 0}, v) != pc) {
    throw Error(ErrorCode::kPreconditionViolated, "point is not within the embedding radius of the sub-union");
  }
  const Surface target = rebase(sn, pn).first;

  const Grid kg = kn.complex().grid();
  const Grid gp = kg.merged(target.complex().grid()).merged(shifted(kg, RatPoint{-v.x, -v.y}));
  const Grid g = shifted(gp, v);

  const ImmersionMap placed = place_sub_union(kn, sn, false, g);
  auto kcx = std::make_shared<const CellComplex>(kn.complex_on(gp));
  auto tcx = std::make_shared<const CellComplex>(target.complex_on(gp));
  ImmersionResult imm = continue_from(kn, target, kcx, tcx, anchor_class(*kcx, kn.base()), anchor_class(*tcx, target.base()));
  if (!imm || !imm.map->injective()) return false;

  const CellComplex& kg_cx = placed.source_complex();
  const CellComplex& sg_cx = placed.target_complex();
  for (int c = 0; c < kcx->class_count(); ++c) {
    if (kcx->kind(c) != CellKind::kVertex) continue;
    const RatPoint x = gp.footprint(kcx->key(c)).first;
    const int kc = kg_cx.class_of(kcx->members(c)[0], x);
    const int w = walk_segment(sg_cx, placed.image(kc), x, x + v);
    if (w < 0 || w != imm.map->image(c)) return false;
  }
  return true;
}

}  // namespace rectsurf
