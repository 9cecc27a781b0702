#include <algorithm>
#include <functional>
#include <sstream>

#include "rectsurf/disks.hpp"
#include "rectsurf/error.hpp"

namespace rectsurf {

std::string invariant_key(const Surface& s) {
  const Surface n = normalize(s);
  std::ostringstream out;
  out << "chi=" << euler_characteristic(n) << ";open=" << n.is_open();
  const CellComplex& cx = n.complex();
  Rational area = 0;
  for (int c : cx.classes_of_kind(CellKind::kFace)) {
    auto [lo, hi] = cx.grid().footprint(cx.key(c));
    area += (hi.x - lo.x) * (hi.y - lo.y);
  }
  out << ";area=" << format_rational(area);
  std::vector<std::string> loops;
  for (const RectiLoop& l : boundary_loops(n)) {
    std::vector<std::string> pts;
    for (const RatPoint& p : l.vertices()) pts.push_back(format_point(p));
    std::vector<std::string> best;
    for (std::size_t r = 0; r < pts.size(); ++r) {
      std::vector<std::string> rot(pts.begin() + static_cast<std::ptrdiff_t>(r), pts.end());
      rot.insert(rot.end(), pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(r));
      if (best.empty() || rot < best) best = std::move(rot);
    }
    std::string joined;
    for (const std::string& p : best) joined += p;
    loops.push_back(std::move(joined));
  }
  std::sort(loops.begin(), loops.end());
  for (const std::string& l : loops) out << ";" << l;
  return out.str();
}

SubbasisStream::SubbasisStream(int max_rects, int denom_bound, int window) : max_rects_(max_rects) {
  if (max_rects < 1 || denom_bound < 1 || window < 1) {
    throw Error(ErrorCode::kPreconditionViolated, "enumeration bounds must be at least 1");
  }
  std::vector<Rational> values;
  for (int q = 1; q <= denom_bound; ++q) {
    for (int p = -window * q; p <= window * q; ++p) values.push_back(Rational(p, q));
  }
  for (Rational& v : values) v.canonicalize();
  values = sorted_unique(std::move(values));
  for (std::size_t a = 0; a < values.size(); ++a) {
    for (std::size_t b = a + 1; b < values.size(); ++b) {
      for (std::size_t c = 0; c < values.size(); ++c) {
        for (std::size_t d = c + 1; d < values.size(); ++d) {
          all_.emplace_back(values[a], values[b], values[c], values[d]);
        }
      }
    }
  }
  std::sort(all_.begin(), all_.end());
  for (std::size_t i = 0; i < all_.size(); ++i) {
    if (all_[i].contains(RatPoint{0, 0})) based_.push_back(i);
  }
}

bool SubbasisStream::is_new(const Surface& s) {
  auto& bucket = buckets_[invariant_key(s)];
  for (const Surface& t : bucket) {
    if (isomorphic(s, t)) return false;
  }
  bucket.push_back(s);
  return true;
}

void SubbasisStream::fill_stratum() {
  const int n = ++stratum_;
  pending_.clear();
  cursor_ = 0;
  std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);

  auto emit = [&]() {
    std::vector<RatRect> rects;
    for (std::size_t i : pick) rects.push_back(all_[i]);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (rects[static_cast<std::size_t>(i)].meets(rects[static_cast<std::size_t>(j)])) pairs.emplace_back(i, j);
      }
    }
    const std::size_t subsets = std::size_t{1} << pairs.size();
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      std::vector<std::pair<int, int>> glue;
      DisjointSets sets(static_cast<std::size_t>(n));
      int parts = n;
      for (std::size_t e = 0; e < pairs.size(); ++e) {
        if (!(mask >> e & 1)) continue;
        glue.push_back(pairs[e]);
        if (sets.unite(static_cast<std::size_t>(pairs[e].first), static_cast<std::size_t>(pairs[e].second))) --parts;
      }
      if (parts != 1) continue;
      Surface s(rects, glue, Anchor{0, RatPoint{0, 0}});
      if (validate(s).ok() && is_new(s)) pending_.push_back(std::move(s));
    }
  };

  std::function<void(int, std::size_t)> rest = [&](int slot, std::size_t from) {
    if (slot == n) {
      emit();
      return;
    }
    for (std::size_t i = from; i < all_.size(); ++i) {
      pick[static_cast<std::size_t>(slot)] = i;
      rest(slot + 1, i);
    }
  };
  for (std::size_t b : based_) {
    pick[0] = b;
    rest(1, 0);
  }
}

std::optional<Surface> SubbasisStream::next() {
  while (cursor_ >= pending_.size()) {
    if (stratum_ >= max_rects_) return std::nullopt;
    fill_stratum();
  }
  return pending_[cursor_++];
}

std::vector<Surface> enumerate_subbasis(int max_rects, int denom_bound, int window) {
  SubbasisStream stream(max_rects, denom_bound, window);
  std::vector<Surface> out;
  while (auto s = stream.next()) out.push_back(std::move(*s));
  return out;
}

}  // namespace rectsurf
