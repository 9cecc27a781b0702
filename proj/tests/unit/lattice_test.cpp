#include <gtest/gtest.h>

#include "generators.hpp"
#include "rectsurf/error.hpp"
#include "rectsurf/lattice.hpp"
#include "rectsurf/morphism.hpp"

namespace rectsurf {
namespace {

using testing::square;
using testing::staircase;
using testing::unit_square;

const Rational kHalf(1, 2);
const RatPoint kCenter{kHalf, kHalf};

RatRect rect_around_origin(testing::Rng& rng) {
  auto side = [&] { return Rational(1 + static_cast<long>(rng() % 6), 2); };
  return RatRect(-side(), side(), -side(), side());
}

Surface single(const RatRect& r) { return Surface({r}, {}, Anchor{0, {0, 0}}); }

// Up-then-right and right-then-up hooks around the hole (1,2)^2.
Surface up_hook() {
  return Surface({RatRect(0, 1, 0, 3), RatRect(0, 3, 2, 3)}, {{0, 1}}, Anchor{0, kCenter});
}
Surface right_hook() {
  return Surface({RatRect(0, 3, 0, 1), RatRect(2, 3, 0, 3)}, {{0, 1}}, Anchor{0, kCenter});
}

TEST(FuseTest, SingleInput) {
  const FusionResult r = fuse({staircase(6)});
  EXPECT_TRUE(isomorphic(r.surface, staircase(6)));
  ASSERT_EQ(r.injections.size(), 1u);
  EXPECT_TRUE(r.injections[0].injective());
}

TEST(FuseTest, PlaneUnion) {
  testing::Rng rng(2);
  for (int round = 0; round < 30; ++round) {
    const RatRect a = rect_around_origin(rng), b = rect_around_origin(rng);
    const Surface expected({a, b}, {{0, 1}}, Anchor{0, {0, 0}});
    const FusionResult r = fuse({single(a), single(b)});
    EXPECT_TRUE(isomorphic(r.surface, expected));
    EXPECT_TRUE(isomorphic(fuse({single(b), single(a)}).surface, r.surface));
    for (const ImmersionMap& m : r.injections) EXPECT_TRUE(m.injective());
  }
}

TEST(FuseTest, AbsorbsImmersedInput) {
  testing::Rng rng(6);
  for (int round = 0; round < 30; ++round) {
    const Surface q = testing::random_surface(rng, 6);
    const Surface p = testing::random_sub_union(rng, q);
    EXPECT_TRUE(isomorphic(fuse({p, q}).surface, q));
    EXPECT_TRUE(isomorphic(fuse({q, p}).surface, q));
  }
}

TEST(FuseTest, HooksStayApartWithoutTheSquare) {
  const Surface two = fuse({up_hook(), right_hook()}).surface;
  EXPECT_TRUE(is_disk(two));
  const Surface full = fuse({up_hook(), right_hook(), square(0, 3, kCenter)}).surface;
  EXPECT_TRUE(isomorphic(full, square(0, 3, kCenter)));
  EXPECT_FALSE(isomorphic(two, full));
}

TEST(CoreTest, Examples) {
  const auto same = core({staircase(7), staircase(7)});
  ASSERT_TRUE(same.has_value());
  EXPECT_TRUE(isomorphic(*same, staircase(7)));

  const Surface a = square(0, 2, {1, 1});
  const Surface b({RatRect(Rational(1, 2), 3, Rational(1, 2), 3)}, {}, Anchor{0, {1, 1}});
  const auto meet = core({a, b});
  ASSERT_TRUE(meet.has_value());
  EXPECT_TRUE(isomorphic(*meet, Surface({RatRect(kHalf, 2, kHalf, 2)}, {}, Anchor{0, {1, 1}})));

  const auto disjoint = core({square(0, 1, {0, 0}), square(-1, 0, {0, 0})});
  EXPECT_FALSE(disjoint.has_value());
}

TEST(CoreTest, IsBelowBothAndHooksMeetInTheSquare) {
  const auto m = core({up_hook(), right_hook()});
  ASSERT_TRUE(m.has_value());
  EXPECT_TRUE(isomorphic(*m, unit_square()));
  testing::Rng rng(10);
  for (int round = 0; round < 30; ++round) {
    const RatRect a = rect_around_origin(rng), b = rect_around_origin(rng);
    const auto c = core({single(a), single(b)});
    ASSERT_TRUE(c.has_value());
    EXPECT_TRUE(immerses(*c, single(a)));
    EXPECT_TRUE(immerses(*c, single(b)));
  }
}

TEST(DirectLimitTest, GrowingSquares) {
  std::vector<Surface> chain;
  for (int n = 1; n <= 5; ++n) chain.push_back(square(-n, n, {0, 0}));
  const LimitResult r = direct_limit(chain);
  ASSERT_TRUE(r.limit.has_value());
  EXPECT_TRUE(isomorphic(*r.limit, square(-5, 5, {0, 0})));
  EXPECT_TRUE(r.certificate.passed);
  for (const auto& d : r.certificate.disk_checks) {
    if (d.applicable) EXPECT_LE(*d.from_index, d.probe);
  }
}

TEST(DirectLimitTest, WrappingStaircase) {
  std::vector<Surface> chain;
  for (int n = 1; n <= 9; ++n) chain.push_back(staircase(n));
  const LimitResult r = direct_limit(chain);
  ASSERT_TRUE(r.limit.has_value());
  EXPECT_TRUE(isomorphic(*r.limit, staircase(9)));
  EXPECT_TRUE(r.certificate.passed);
}

TEST(DirectLimitTest, ConstantAndNonChain) {
  const LimitResult r = direct_limit({unit_square(), unit_square()});
  EXPECT_TRUE(isomorphic(*r.limit, unit_square()));
  EXPECT_TRUE(r.certificate.passed);
  try {
    direct_limit({square(-1, 1, {0, 0}), unit_square()});
    FAIL() << "not increasing";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotAChain);
  }
}

TEST(InverseLimitTest, ShrinkingSquares) {
  std::vector<Surface> chain;
  for (int n = 1; n <= 5; ++n) chain.push_back(square(-Rational(1, n), Rational(1, n), {0, 0}));
  const LimitResult r = inverse_limit(chain);
  ASSERT_TRUE(r.limit.has_value());
  EXPECT_TRUE(isomorphic(*r.limit, chain.back()));
  EXPECT_TRUE(inverse_limit({unit_square(), unit_square()}).limit.has_value());
}

TEST(InverseLimitTest, NestedLShapes) {
  const Surface outer({RatRect(0, 4, 0, 2), RatRect(0, 2, 0, 4)}, {{0, 1}}, Anchor{0, kCenter});
  const Surface inner({RatRect(0, 3, 0, 1), RatRect(0, 1, 0, 3)}, {{0, 1}}, Anchor{0, kCenter});
  const LimitResult r = inverse_limit({outer, inner});
  ASSERT_TRUE(r.limit.has_value());
  EXPECT_TRUE(isomorphic(*r.limit, inner));
}

TEST(WitnessTest, Examples) {
  const std::vector<Surface> inputs{up_hook(), right_hook(), square(0, 3, kCenter)};
  const auto bases = fusion_finiteness_witness(inputs, 0, up_hook().base(), 1, right_hook().base());
  ASSERT_TRUE(bases.has_value());
  EXPECT_EQ(*bases, (std::vector<int>{0, 1}));

  const Anchor far0{1, {Rational(5, 2), Rational(5, 2)}};
  const Anchor far1{1, {Rational(5, 2), Rational(5, 2)}};
  const auto forced = fusion_finiteness_witness(inputs, 0, far0, 1, far1);
  ASSERT_TRUE(forced.has_value());
  EXPECT_EQ(*forced, (std::vector<int>{0, 1, 2}));

  const std::vector<Surface> hooks{up_hook(), right_hook()};
  EXPECT_FALSE(fusion_finiteness_witness(hooks, 0, far0, 1, far1).has_value());
}

}  // namespace
}  // namespace rectsurf
