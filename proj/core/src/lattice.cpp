#include "rectsurf/lattice.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <memory>

#include "rectsurf/assembly.hpp"
#include "rectsurf/error.hpp"

namespace rectsurf {

namespace {

// Normalized inputs on one common grid, with classes numbered globally.
struct DisjointUnion {
  std::vector<Surface> surfaces;
  Grid grid;
  std::vector<std::shared_ptr<const CellComplex>> cx;
  std::vector<std::size_t> offset;

  explicit DisjointUnion(const std::vector<Surface>& inputs) {
    if (inputs.empty()) throw Error(ErrorCode::kPreconditionViolated, "no inputs");
    for (const Surface& s : inputs) {
      surfaces.push_back(normalize(s));
      grid = surfaces.size() == 1 ? surfaces.back().complex().grid() : grid.merged(surfaces.back().complex().grid());
    }
    offset.push_back(0);
    for (const Surface& s : surfaces) {
      cx.push_back(std::make_shared<const CellComplex>(s.complex_on(grid)));
      offset.push_back(offset.back() + static_cast<std::size_t>(cx.back()->class_count()));
    }
  }

  std::size_t total() const { return offset.back(); }
  std::size_t gid(std::size_t input, int cls) const { return offset[input] + static_cast<std::size_t>(cls); }
  std::pair<std::size_t, int> local(std::size_t g) const {
    const auto it = std::upper_bound(offset.begin(), offset.end(), g);
    const auto input = static_cast<std::size_t>(it - offset.begin()) - 1;
    return {input, static_cast<int>(g - offset[input])};
  }
  std::size_t base_gid(std::size_t input) const {
    return gid(input, anchor_class(*cx[input], surfaces[input].base()));
  }
};

// Congruence closure: identified cells have their equally-placed neighbors
// identified too.
class Congruence {
 public:
  Congruence(const DisjointUnion& du, const std::vector<char>& included) : du_(du), sets_(du.total()) {
    table_.resize(du.total());
    for (std::size_t input = 0; input < du.surfaces.size(); ++input) {
      if (!included[input]) continue;
      const CellComplex& c = *du.cx[input];
      for (int cls = 0; cls < c.class_count(); ++cls) {
        auto& t = table_[du.gid(input, cls)];
        for (int d : c.up(cls)) t.emplace_back(du.grid.slot(c.key(d)), du.gid(input, d));
        for (int d : c.down(cls)) t.emplace_back(du.grid.slot(c.key(d)), du.gid(input, d));
        std::sort(t.begin(), t.end());
      }
    }
    std::size_t first = du.surfaces.size();
    for (std::size_t input = 0; input < du.surfaces.size(); ++input) {
      if (!included[input]) continue;
      if (first == du.surfaces.size()) first = input;
      else pending_.emplace_back(du.base_gid(first), du.base_gid(input));
    }
    run();
  }

  std::size_t find(std::size_t g) { return sets_.find(g); }

 private:
  void run() {
    while (!pending_.empty()) {
      auto [x, y] = pending_.front();
      pending_.pop_front();
      std::size_t rx = sets_.find(x), ry = sets_.find(y);
      if (rx == ry) continue;
      if (table_[rx].size() < table_[ry].size()) std::swap(rx, ry);
      auto& big = table_[rx];
      auto& small = table_[ry];
      std::vector<std::pair<std::size_t, std::size_t>> merged;
      merged.reserve(big.size() + small.size());
      std::size_t a = 0, b = 0;
      while (a < big.size() || b < small.size()) {
        if (b == small.size() || (a < big.size() && big[a].first < small[b].first)) {
          merged.push_back(big[a++]);
        } else if (a == big.size() || small[b].first < big[a].first) {
          merged.push_back(small[b++]);
        } else {
          pending_.emplace_back(big[a].second, small[b].second);
          merged.push_back(big[a++]);
          ++b;
        }
      }
      sets_.unite(rx, ry);
      const std::size_t root = sets_.find(rx);
      small.clear();
      small.shrink_to_fit();
      big.clear();
      table_[root] = std::move(merged);
    }
  }

  const DisjointUnion& du_;
  DisjointSets sets_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> table_;
  std::deque<std::pair<std::size_t, std::size_t>> pending_;
};

// Assemble faces whose closure ids are already in place; base at the origin,
// given either as a face index or as a closure id.
Surface assemble_at_origin(const Grid& grid, std::vector<AbstractFace> faces, int base_face, std::int64_t base_id,
                           bool base_is_vertex, bool open) {
  const auto split = split_pinched_vertices(faces);
  if (base_is_vertex && std::binary_search(split.begin(), split.end(), base_id)) {
    throw Error(ErrorCode::kPreconditionViolated, "result pinches at the basepoint");
  }
  for (std::size_t f = 0; f < faces.size() && base_face < 0; ++f) {
    for (std::int64_t id : faces[f].ids) {
      if (id == base_id) base_face = static_cast<int>(f);
    }
  }
  return assemble(grid, faces, base_face < 0 ? 0 : base_face, RatPoint{0, 0}, open);
}

}  // namespace

FusionResult fuse(const std::vector<Surface>& inputs) {
  DisjointUnion du(inputs);
  for (const Surface& s : du.surfaces) require_valid(s);
  std::vector<char> all(du.surfaces.size(), 1);
  Congruence cong(du, all);

  // One abstract face per face group; ids are group roots.
  const std::size_t base = cong.find(du.base_gid(0));
  const CellKind base_kind = du.cx[0]->kind(anchor_class(*du.cx[0], du.surfaces[0].base()));
  std::vector<AbstractFace> faces;
  int base_face = -1;
  std::vector<char> taken(du.total(), 0);
  for (std::size_t g = 0; g < du.total(); ++g) {
    auto [input, cls] = du.local(g);
    const CellComplex& c = *du.cx[input];
    if (c.kind(cls) != CellKind::kFace) continue;
    const std::size_t root = cong.find(g);
    if (taken[root]) continue;
    taken[root] = 1;
    if (root == base) base_face = static_cast<int>(faces.size());
    AbstractFace face{c.key(cls), {}};
    auto down = c.down(cls);
    for (std::size_t t = 0; t < 8; ++t) face.ids[t] = static_cast<std::int64_t>(cong.find(du.gid(input, down[t])));
    faces.push_back(face);
  }
  const bool open = std::all_of(inputs.begin(), inputs.end(), [](const Surface& s) { return s.is_open(); });
  Surface result = assemble_at_origin(du.grid, std::move(faces), base_face, static_cast<std::int64_t>(base),
                                      base_kind == CellKind::kVertex, open);

  FusionResult out{result, {}};
  for (const Surface& s : du.surfaces) {
    ImmersionResult r = find_immersion(s, out.surface);
    if (!r) throw Error(ErrorCode::kPreconditionViolated, "input does not immerse into its fusion: " + r.failure.reason);
    out.injections.push_back(std::move(*r.map));
  }
  return out;
}

}  // namespace rectsurf

namespace rectsurf {

std::optional<Surface> core(const std::vector<Surface>& inputs) {
  DisjointUnion du(inputs);
  for (const Surface& s : du.surfaces) require_valid(s);
  const std::size_t m = du.surfaces.size();
  const Grid& grid = du.grid;
  using Tuple = std::vector<int>;

  std::map<Tuple, std::int64_t> ids;
  auto id_of = [&](const Tuple& t) {
    auto [it, fresh] = ids.emplace(t, static_cast<std::int64_t>(ids.size()));
    (void)fresh;
    return it->second;
  };
  // Componentwise neighbor with footprint k, or empty.
  auto step = [&](const Tuple& t, const CellKey& k) {
    Tuple out(m);
    for (std::size_t i = 0; i < m; ++i) {
      out[i] = du.cx[i]->neighbor(t[i], k);
      if (out[i] < 0) return Tuple{};
    }
    return out;
  };

  Tuple base(m);
  for (std::size_t i = 0; i < m; ++i) base[i] = anchor_class(*du.cx[i], du.surfaces[i].base());
  const CellKey base_key = du.cx[0]->key(base[0]);

  std::vector<Tuple> starts;
  if (base_key.kind == CellKind::kFace) {
    starts.push_back(base);
  } else {
    for (const CellKey& k : grid.star(base_key)) {
      if (k.kind != CellKind::kFace) continue;
      Tuple f = step(base, k);
      if (!f.empty()) starts.push_back(std::move(f));
    }
  }
  if (starts.empty()) return std::nullopt;

  // Faces reachable across edges from the first start face.
  std::map<Tuple, int> seen;
  std::vector<Tuple> order;
  seen.emplace(starts.front(), 0);
  order.push_back(starts.front());
  for (std::size_t head = 0; head < order.size(); ++head) {
    const Tuple f = order[head];
    const CellKey fk = du.cx[0]->key(f[0]);
    auto closure = grid.closure(fk);
    for (std::size_t e = 0; e < 4; ++e) {
      const Tuple edge = step(f, closure[e]);
      for (const CellKey& other : grid.star(closure[e])) {
        if (other == fk) continue;
        Tuple g = step(edge, other);
        if (g.empty() || seen.count(g)) continue;
        seen.emplace(g, static_cast<int>(order.size()));
        order.push_back(std::move(g));
      }
    }
  }
  for (const Tuple& s : starts) {
    if (!seen.count(s)) throw Error(ErrorCode::kPreconditionViolated, "common part pinches at the basepoint");
  }

  std::vector<AbstractFace> faces;
  int base_face = -1;
  for (const Tuple& f : order) {
    const CellKey fk = du.cx[0]->key(f[0]);
    if (f == base) base_face = static_cast<int>(faces.size());
    AbstractFace face{fk, {}};
    auto closure = grid.closure(fk);
    for (std::size_t t = 0; t < 8; ++t) face.ids[t] = id_of(step(f, closure[t]));
    faces.push_back(face);
  }
  const std::int64_t base_id = base_key.kind == CellKind::kFace ? -1 : id_of(base);
  const bool open = std::all_of(inputs.begin(), inputs.end(), [](const Surface& s) { return s.is_open(); });
  return assemble_at_origin(grid, std::move(faces), base_face, base_id, base_key.kind == CellKind::kVertex, open);
}

namespace {

std::vector<Surface> disk_probes(const std::vector<Surface>& chain, const std::vector<Surface>& extra) {
  std::vector<Surface> probes;
  for (const Surface& s : chain) {
    if (is_disk(s)) probes.push_back(s.with_open(false));
  }
  probes.insert(probes.end(), extra.begin(), extra.end());
  return probes;
}

}  // namespace

LimitResult direct_limit(const std::vector<Surface>& chain, const std::vector<Surface>& extra_probes) {
  if (chain.empty()) throw Error(ErrorCode::kNotAChain, "empty chain");
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    if (!immerses(chain[i], chain[i + 1])) {
      throw Error(ErrorCode::kNotAChain, "term " + std::to_string(i) + " does not immerse into the next");
    }
  }
  LimitResult out{fuse(chain).surface, {}};
  out.certificate = convergence_certificate(chain, *out.limit, disk_probes(chain, extra_probes));
  return out;
}

LimitResult inverse_limit(const std::vector<Surface>& chain, const std::vector<Surface>& extra_probes) {
  if (chain.empty()) throw Error(ErrorCode::kNotAChain, "empty chain");
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    if (!immerses(chain[i + 1], chain[i])) {
      throw Error(ErrorCode::kNotAChain, "term " + std::to_string(i + 1) + " does not immerse into the previous");
    }
  }
  LimitResult out{core(chain), {}};
  if (out.limit) {
    out.certificate = convergence_certificate(chain, *out.limit, disk_probes(chain, extra_probes));
  } else {
    out.certificate.sequence_length = static_cast<int>(chain.size());
    out.certificate.passed = false;
  }
  out.certificate.caveat +=
      "; a decreasing chain whose embedding radius at the basepoint tends to zero converges to the bottom element, "
      "which no finite prefix shows";
  return out;
}

std::optional<std::vector<int>> fusion_finiteness_witness(const std::vector<Surface>& inputs, int i,
                                                          const SurfacePoint& p, int j, const SurfacePoint& q) {
  const auto n = static_cast<int>(inputs.size());
  if (i < 0 || j < 0 || i >= n || j >= n) throw Error(ErrorCode::kPreconditionViolated, "input index out of range");
  const RatPoint pn = dev(inputs[static_cast<std::size_t>(i)], p) - inputs[static_cast<std::size_t>(i)].base().point;
  const RatPoint qn = dev(inputs[static_cast<std::size_t>(j)], q) - inputs[static_cast<std::size_t>(j)].base().point;
  if (pn != qn) return std::nullopt;

  DisjointUnion du(inputs);
  const Grid grid = du.grid.with_point(pn);
  if (!(grid == du.grid)) {
    for (std::size_t k = 0; k < du.cx.size(); ++k) du.cx[k] = std::make_shared<const CellComplex>(du.surfaces[k].complex_on(grid));
    du.grid = grid;
    du.offset.assign(1, 0);
    for (const auto& c : du.cx) du.offset.push_back(du.offset.back() + static_cast<std::size_t>(c->class_count()));
  }
  const std::size_t gp = du.gid(static_cast<std::size_t>(i), du.cx[static_cast<std::size_t>(i)]->class_of(p.rect, pn));
  const std::size_t gq = du.gid(static_cast<std::size_t>(j), du.cx[static_cast<std::size_t>(j)]->class_of(q.rect, qn));
  auto identified = [&](const std::vector<char>& mask) {
    Congruence cong(du, mask);
    return cong.find(gp) == cong.find(gq);
  };
  std::vector<char> mask(inputs.size(), 1);
  if (!identified(mask)) return std::nullopt;
  for (int k = 0; k < n; ++k) {
    if (k == i || k == j) continue;
    mask[static_cast<std::size_t>(k)] = 0;
    if (!identified(mask)) mask[static_cast<std::size_t>(k)] = 1;
  }
  std::vector<int> out;
  for (int k = 0; k < n; ++k) {
    if (mask[static_cast<std::size_t>(k)]) out.push_back(k);
  }
  return out;
}

}  // namespace rectsurf
