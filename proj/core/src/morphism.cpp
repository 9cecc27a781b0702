#include "rectsurf/morphism.hpp"

#include <algorithm>
#include <deque>

#include "rectsurf/assembly.hpp"
#include "rectsurf/error.hpp"

namespace rectsurf {

ImmersionMap::ImmersionMap(Surface source, Surface target, std::shared_ptr<const CellComplex> source_cx,
                           std::shared_ptr<const CellComplex> target_cx, std::vector<int> cell_map)
    : source_(std::move(source)),
      target_(std::move(target)),
      source_cx_(std::move(source_cx)),
      target_cx_(std::move(target_cx)),
      cell_map_(std::move(cell_map)) {
  std::vector<char> hit(static_cast<std::size_t>(target_cx_->class_count()), 0);
  injective_ = true;
  for (int t : cell_map_) {
    if (t < 0) continue;
    if (hit[static_cast<std::size_t>(t)]) {
      injective_ = false;
      break;
    }
    hit[static_cast<std::size_t>(t)] = 1;
  }
}

std::vector<int> ImmersionMap::image_classes() const {
  std::vector<int> out;
  for (int t : cell_map_) {
    if (t >= 0) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<Anchor> ImmersionMap::map_point(const Anchor& p) const {
  const int c = anchor_class(*source_cx_, p);
  if (c < 0 || image(c) < 0) return std::nullopt;
  return Anchor{target_cx_->members(image(c))[0], p.point};
}

ImmersionResult continue_from(const Surface& a, const Surface& b, std::shared_ptr<const CellComplex> a_cx,
                              std::shared_ptr<const CellComplex> b_cx, int a_start, int b_start) {
  ImmersionResult result;
  const CellComplex& ac = *a_cx;
  const CellComplex& bc = *b_cx;
  const bool a_open = a.is_open(), b_open = b.is_open();
  if (a_start < 0 || b_start < 0 || ac.key(a_start) != bc.key(b_start)) {
    result.failure = {a_start >= 0 ? ac.key(a_start) : CellKey{}, {}, "basepoint cells differ"};
    return result;
  }
  if (!is_active(bc, b_start, b_open)) {
    result.failure = {ac.key(a_start), ac.key(a_start), "basepoint lies on the boundary of the open target"};
    return result;
  }
  std::vector<int> map(static_cast<std::size_t>(ac.class_count()), -1);
  map[static_cast<std::size_t>(a_start)] = b_start;
  std::deque<int> queue{a_start};
  while (!queue.empty()) {
    const int c = queue.front();
    queue.pop_front();
    const int img = map[static_cast<std::size_t>(c)];
    auto step = [&](int d) -> bool {
      if (!is_active(ac, d, a_open)) return true;
      const int t = bc.neighbor(img, ac.key(d));
      if (t < 0 || !is_active(bc, t, b_open)) {
        result.failure = {ac.key(c), ac.key(d), t < 0 ? "target has no matching cell" : "target cell is on the boundary of the open target"};
        return false;
      }
      int& slot = map[static_cast<std::size_t>(d)];
      if (slot < 0) {
        slot = t;
        queue.push_back(d);
      } else if (slot != t) {
        result.failure = {ac.key(c), ac.key(d), "continuation along two paths disagrees"};
        return false;
      }
      return true;
    };
    for (int d : ac.up(c)) {
      if (!step(d)) return result;
    }
    for (int d : ac.down(c)) {
      if (!step(d)) return result;
    }
  }
  result.map.emplace(a, b, std::move(a_cx), std::move(b_cx), std::move(map));
  return result;
}

namespace {

struct CommonPair {
  Surface a, b;
  std::shared_ptr<const CellComplex> a_cx, b_cx;
};

CommonPair common(const Surface& a, const Surface& b) {
  Surface na = normalize(a), nb = normalize(b);
  Grid g = na.complex().grid().merged(nb.complex().grid());
  auto acx = std::make_shared<const CellComplex>(na.complex_on(g));
  auto bcx = std::make_shared<const CellComplex>(nb.complex_on(g));
  return {std::move(na), std::move(nb), std::move(acx), std::move(bcx)};
}

ImmersionResult run(const CommonPair& p, bool forward) {
  const Surface& s = forward ? p.a : p.b;
  const Surface& t = forward ? p.b : p.a;
  const auto& scx = forward ? p.a_cx : p.b_cx;
  const auto& tcx = forward ? p.b_cx : p.a_cx;
  return continue_from(s, t, scx, tcx, anchor_class(*scx, s.base()), anchor_class(*tcx, t.base()));
}

}  // namespace

ImmersionResult find_immersion(const Surface& a, const Surface& b) { return run(common(a, b), true); }

bool immerses(const Surface& a, const Surface& b) { return static_cast<bool>(find_immersion(a, b)); }

bool embeds(const Surface& a, const Surface& b) {
  ImmersionResult r = find_immersion(a, b);
  return r && r.map->injective();
}

bool isomorphic(const Surface& a, const Surface& b) {
  if (a.is_open() != b.is_open()) return false;
  CommonPair p = common(a, b);
  if (p.a_cx->class_count() != p.b_cx->class_count()) return false;
  ImmersionResult f = run(p, true);
  if (!f || !f.map->injective()) return false;
  // An injective immersion between complexes with equally many active cells
  // that hits every active target cell is an isomorphism.
  int active = 0;
  for (int c = 0; c < p.b_cx->class_count(); ++c) active += is_active(*p.b_cx, c, p.b.is_open()) ? 1 : 0;
  return static_cast<int>(f.map->image_classes().size()) == active && static_cast<bool>(run(p, false));
}

namespace {

ImmersionMap place_on(const Surface& sub, const Surface& host, bool into_interior, const Grid& g) {
  const Surface h = host.with_open(into_interior);
  auto scx = std::make_shared<const CellComplex>(sub.complex_on(g));
  auto hcx = std::make_shared<const CellComplex>(h.complex_on(g));
  const int start = anchor_class(*scx, sub.base());
  if (start < 0) throw Error(ErrorCode::kInvalidSubUnion, "sub-union basepoint outside its rectangle");
  const int host_base = anchor_class(*hcx, h.base());
  std::vector<ImmersionMap> found;
  for (int cand : hcx->classes_at(scx->key(start))) {
    ImmersionResult r = continue_from(sub, h, scx, hcx, start, cand);
    if (r && r.map->injective()) found.push_back(std::move(*r.map));
  }
  if (found.empty()) throw Error(ErrorCode::kInvalidSubUnion, "not contained in the host");
  if (found.size() > 1) {
    // Prefer the sheet through the host basepoint.
    std::erase_if(found, [&](const ImmersionMap& m) {
      const auto img = m.image_classes();
      return !std::binary_search(img.begin(), img.end(), host_base);
    });
    if (found.size() != 1) throw Error(ErrorCode::kInvalidSubUnion, "placement in the host is ambiguous");
  }
  return std::move(found.front());
}

}  // namespace

ImmersionMap place_sub_union(const Surface& sub, const Surface& host, bool into_interior) {
  return place_on(sub, host, into_interior, sub.complex().grid().merged(host.complex().grid()));
}

ImmersionMap place_sub_union(const Surface& sub, const Surface& host, bool into_interior, const Grid& grid) {
  return place_on(sub, host, into_interior, grid);
}

Surface image_surface(const ImmersionMap& m) {
  const CellComplex& tc = m.target_complex();
  std::vector<int> faces;
  for (int t : m.image_classes()) {
    if (tc.kind(t) == CellKind::kFace) faces.push_back(t);
  }
  const int base_cls = anchor_class(tc, m.target().base());
  int base_face = 0;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    auto down = tc.down(faces[f]);
    if (faces[f] == base_cls || std::find(down.begin(), down.end(), base_cls) != down.end()) {
      base_face = static_cast<int>(f);
      break;
    }
  }
  return assemble(tc.grid(), faces_of(tc, faces), base_face, m.target().base().point, m.source().is_open());
}

bool subbasis_membership(SubbasisKind kind, const Surface& test_set, const Surface& q) {
  switch (kind) {
    case SubbasisKind::kImm: return immerses(test_set.with_open(false), q);
    case SubbasisKind::kEmb: return embeds(test_set.with_open(false), q);
    case SubbasisKind::kNotImm: return !immerses(test_set.with_open(true), q);
    case SubbasisKind::kNotEmb: return !embeds(test_set.with_open(true), q);
  }
  return false;
}

namespace {

// Is q in the image of the inner sub-union under outer ⇝ target? nullopt when
// outer does not immerse.
std::optional<bool> hits(const Surface& outer, const Surface& inner, bool inner_open, const Surface& target,
                         const SurfacePoint& q) {
  dev(target, q);
  const Surface out = outer.with_open(false);
  const Surface in = inner.with_open(inner_open);
  const RatPoint shift = outer.base().point - target.base().point;
  const Surface t = translated(target, shift);
  const RatPoint qp = q.point + shift;
  const Grid g = out.complex().grid().merged(in.complex().grid()).merged(t.complex().grid()).with_point(qp);

  const ImmersionMap placed = place_on(in, out, inner_open, g);
  auto ocx = std::make_shared<const CellComplex>(out.complex_on(g));
  auto tcx = std::make_shared<const CellComplex>(t.complex_on(g));
  ImmersionResult r = continue_from(out, t, ocx, tcx, anchor_class(*ocx, out.base()), anchor_class(*tcx, t.base()));
  if (!r) return std::nullopt;
  const int qc = tcx->class_of(q.rect, qp);
  for (int c = 0; c < placed.source_complex().class_count(); ++c) {
    const int o = placed.image(c);
    if (o >= 0 && r.map->image(o) == qc) return true;
  }
  return false;
}

}  // namespace

bool bundle_membership_plus(const Surface& k, const Surface& u, const Surface& target, const SurfacePoint& q) {
  return hits(k, u, true, target, q).value_or(false);
}

bool bundle_membership_minus(const Surface& k2, const Surface& k1, const Surface& target, const SurfacePoint& q) {
  auto h = hits(k2, k1, false, target, q);
  return h.has_value() && !*h;
}

CertificateReport convergence_certificate(const std::vector<Surface>& seq, const Surface& limit,
                                          const std::vector<Surface>& probes) {
  if (seq.empty()) throw Error(ErrorCode::kPreconditionViolated, "empty sequence");
  CertificateReport report;
  const int n = static_cast<int>(seq.size());
  report.sequence_length = n;
  report.tail_start = n - 1;
  report.caveat =
      "checked on a finite prefix of " + std::to_string(n) +
      " terms with finitely many probes; a passing certificate is evidence of convergence, not a proof";
  for (std::size_t p = 0; p < probes.size(); ++p) {
    if (!is_disk(probes[p])) {
      throw Error(ErrorCode::kInvalidProbe, "probe " + std::to_string(p) + " is not a closed disk");
    }
  }
  for (std::size_t p = 0; p < probes.size(); ++p) {
    const Surface& d = probes[p];
    const int id = static_cast<int>(p);

    CertificateReport::DiskCheck a{id, embeds(d, limit), std::nullopt, true};
    if (a.applicable) {
      int first = n;
      while (first > 0 && immerses(d, seq[static_cast<std::size_t>(first - 1)])) --first;
      if (first < n) a.from_index = first;
      a.passed = a.from_index.has_value();
    }
    report.disk_checks.push_back(a);

    CertificateReport::LimitCheck b{id, false, false, true};
    b.applicable = embeds(d, seq.back());
    if (b.applicable) {
      b.immerses_in_limit = immerses(d, limit);
      b.passed = b.immerses_in_limit;
    }
    report.limit_checks.push_back(b);
    report.passed = report.passed && a.passed && b.passed;
  }
  return report;
}

}  // namespace rectsurf
