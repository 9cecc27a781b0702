#include <algorithm>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "rectsurf/error.hpp"
#include "rectsurf/geom.hpp"

namespace rectsurf {
namespace {

RectiLoop unit_loop() { return RectiLoop({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

RectiLoop twice_around(int side) {
  return RectiLoop({{0, 0}, {side, 0}, {side, side}, {0, side}, {0, 0}, {side, 0}, {side, side}, {0, side}});
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kMalformedInput;
}

Rational shoelace(const RectiLoop& loop) {
  Rational twice = 0;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const RatPoint& a = loop.vertex(i);
    const RatPoint& b = loop.vertex(i + 1);
    twice += a.x * b.y - b.x * a.y;
  }
  return twice / 2;
}

// Crossings of the upward vertical ray from p with horizontal edges.
int ray_crossings(const RectiLoop& loop, const RatPoint& p) {
  int w = 0;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const RatPoint& a = loop.vertex(i);
    const RatPoint& b = loop.vertex(i + 1);
    if (a.y != b.y || a.y <= p.y) continue;
    const Rational lo = std::min(a.x, b.x), hi = std::max(a.x, b.x);
    if (lo < p.x && p.x < hi) w += a.x > b.x ? 1 : -1;
  }
  return w;
}

TEST(RationalTest, ParseAndFormat) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-4"), Rational(-4));
  EXPECT_EQ(format_rational(Rational(6, 4)), "3/2");
  EXPECT_EQ(format_rational(Rational(-2)), "-2");
  EXPECT_EQ(code_of([] { parse_rational("1/0"); }), ErrorCode::kMalformedInput);
  EXPECT_EQ(code_of([] { parse_rational("x"); }), ErrorCode::kMalformedInput);
  EXPECT_EQ(code_of([] { parse_rational(""); }), ErrorCode::kMalformedInput);
}

TEST(RatRectTest, RejectsDegenerate) {
  EXPECT_THROW(RatRect(0, 0, 0, 1), Error);
  EXPECT_THROW(RatRect(1, 0, 0, 1), Error);
  EXPECT_NO_THROW(RatRect(0, Rational(1, 3), 0, 1));
}

TEST(RatRectTest, ContactPredicates) {
  const RatRect a(0, 1, 0, 1);
  EXPECT_TRUE(a.meets(RatRect(1, 2, 1, 2)));
  EXPECT_FALSE(a.overlaps(RatRect(1, 2, 1, 2)));
  EXPECT_TRUE(a.overlaps(RatRect(Rational(1, 2), 2, 0, 1)));
  EXPECT_FALSE(a.meets(RatRect(2, 3, 0, 1)));
}

TEST(RectiLoopTest, RejectsNonAlternating) {
  EXPECT_THROW(RectiLoop({{0, 0}, {1, 0}, {2, 0}, {2, 1}, {0, 1}}), Error);
  EXPECT_THROW(RectiLoop({{0, 0}, {1, 1}, {0, 1}, {1, 0}}), Error);
  EXPECT_THROW(RectiLoop({{0, 0}, {1, 0}}), Error);
}

TEST(OverlayTest, SingleRectangle) {
  const std::vector<RatRect> rects{RatRect(0, 1, 0, 1)};
  const Arrangement a = overlay(rects);
  EXPECT_EQ(a.faces.size(), 1u);
  EXPECT_EQ(a.edges.size(), 4u);
  EXPECT_EQ(a.vertices.size(), 4u);
}

TEST(OverlayTest, OneDimensionalOverlap) {
  const std::vector<RatRect> rects{RatRect(0, 2, 0, 1), RatRect(1, 3, 0, 1)};
  const Arrangement a = overlay(rects);
  ASSERT_EQ(a.faces.size(), 3u);
  int doubly = 0;
  for (const auto& f : a.faces) {
    if (f.containing.size() == 2) {
      ++doubly;
      EXPECT_EQ(f.rect, RatRect(1, 2, 0, 1));
    }
  }
  EXPECT_EQ(doubly, 1);
}

TEST(OverlayTest, MatchesGridScan) {
  testing::Rng rng(11);
  for (int round = 0; round < 20; ++round) {
    std::vector<RatRect> rects;
    for (int i = 0; i < 10; ++i) {
      Rational x0 = testing::rational_in(rng, 0, 5, 3), x1 = testing::rational_in(rng, 0, 5, 3);
      Rational y0 = testing::rational_in(rng, 0, 5, 3), y1 = testing::rational_in(rng, 0, 5, 3);
      if (x0 == x1) x1 += 1;
      if (y0 == y1) y1 += 1;
      rects.emplace_back(std::min(x0, x1), std::max(x0, x1), std::min(y0, y1), std::max(y0, y1));
    }
    std::vector<Rational> xs, ys;
    for (const RatRect& r : rects) {
      xs.insert(xs.end(), {r.x_lo(), r.x_hi()});
      ys.insert(ys.end(), {r.y_lo(), r.y_hi()});
    }
    xs = sorted_unique(xs);
    ys = sorted_unique(ys);
    std::size_t covered = 0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
        const RatPoint mid{(xs[i] + xs[i + 1]) / 2, (ys[j] + ys[j + 1]) / 2};
        covered += std::any_of(rects.begin(), rects.end(), [&](const RatRect& r) { return r.contains(mid); });
      }
    }
    const Arrangement a = overlay(rects);
    EXPECT_EQ(a.faces.size(), covered);
    for (const auto& f : a.faces) {
      const RatPoint mid{(f.rect.x_lo() + f.rect.x_hi()) / 2, (f.rect.y_lo() + f.rect.y_hi()) / 2};
      std::vector<std::size_t> expect;
      for (std::size_t k = 0; k < rects.size(); ++k) {
        if (rects[k].contains(mid)) expect.push_back(k);
      }
      std::vector<std::size_t> got = f.containing;
      std::sort(got.begin(), got.end());
      EXPECT_EQ(got, expect);
    }
    std::shuffle(rects.begin(), rects.end(), rng);
    EXPECT_EQ(overlay(rects).faces.size(), covered);
  }
}

TEST(WindingTest, UnitSquare) {
  EXPECT_EQ(winding_number(unit_loop(), {Rational(1, 2), Rational(1, 2)}), 1);
  EXPECT_EQ(winding_number(unit_loop(), {2, 2}), 0);
  EXPECT_EQ(winding_number(unit_loop().reversed(), {Rational(1, 2), Rational(1, 2)}), -1);
  EXPECT_EQ(winding_number(twice_around(1), {Rational(1, 2), Rational(1, 2)}), 2);
}

TEST(WindingTest, OnTraceIsAnError) {
  EXPECT_EQ(code_of([] { winding_number(unit_loop(), {1, Rational(1, 2)}); }), ErrorCode::kPointOnCurve);
  EXPECT_EQ(code_of([] { winding_number(unit_loop(), {0, 0}); }), ErrorCode::kPointOnCurve);
}

TEST(WindingTest, AgreesWithRayCrossingsAndSymmetries) {
  testing::Rng rng(5);
  for (int round = 0; round < 100; ++round) {
    const RectiLoop loop = testing::random_loop(rng, 2 + static_cast<int>(rng() % 4), 5);
    for (int k = 0; k < 10; ++k) {
      const RatPoint p{testing::rational_in(rng, -1, 6, 2), testing::rational_in(rng, -1, 6, 2)};
      if (p.x.get_den() == 1 || p.y.get_den() == 1) continue;
      const int w = winding_number(loop, p);
      EXPECT_EQ(w, ray_crossings(loop, p));
      EXPECT_EQ(winding_number(loop.rotated(3), p), w);
      EXPECT_EQ(winding_number(loop.reversed(), p), -w);
    }
  }
}

TEST(DecompositionTest, UnitSquare) {
  const auto parts = loop_region_decomposition(unit_loop());
  ASSERT_EQ(parts.size(), 1u);
  EXPECT_EQ(parts[0].rect, RatRect(0, 1, 0, 1));
  EXPECT_EQ(parts[0].multiplicity, 1);
  EXPECT_EQ(code_of([] { loop_region_decomposition(unit_loop().reversed()); }), ErrorCode::kNegativeWinding);
}

TEST(DecompositionTest, DoublyWound) {
  const RectiLoop loop = twice_around(2);
  Rational total = 0;
  for (const auto& part : loop_region_decomposition(loop)) {
    EXPECT_EQ(part.multiplicity, 2);
    total += part.rect.area() * part.multiplicity;
  }
  EXPECT_EQ(total, 8);
  EXPECT_EQ(total, shoelace(loop));
}

TEST(DecompositionTest, WeightedAreaIsShoelaceArea) {
  testing::Rng rng(17);
  int checked = 0;
  for (int round = 0; round < 300; ++round) {
    const RectiLoop loop = testing::random_loop(rng, 2 + static_cast<int>(rng() % 5), 6);
    EXPECT_EQ(loop.signed_area(), shoelace(loop));
    std::vector<WeightedRect> parts;
    try {
      parts = loop_region_decomposition(loop);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kNegativeWinding);
      continue;
    }
    Rational total = 0;
    for (const auto& part : parts) {
      EXPECT_GT(part.multiplicity, 0);
      total += part.rect.area() * part.multiplicity;
    }
    EXPECT_EQ(total, shoelace(loop));
    ++checked;
  }
  EXPECT_GT(checked, 20);
}

TEST(RectiLoopTest, SameCycle) {
  EXPECT_TRUE(unit_loop().same_cycle(unit_loop().rotated(2)));
  EXPECT_FALSE(unit_loop().same_cycle(unit_loop().reversed()));
  EXPECT_EQ(unit_loop().rotation_index(), 1);
  EXPECT_EQ(unit_loop().reversed().rotation_index(), -1);
  EXPECT_EQ(twice_around(1).rotation_index(), 2);
}

}  // namespace
}  // namespace rectsurf
