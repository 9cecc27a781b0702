#include <gtest/gtest.h>

#include "generators.hpp"
#include "rectsurf/error.hpp"
#include "rectsurf/io.hpp"
#include "rectsurf/morphism.hpp"

namespace rectsurf {
namespace {

std::size_t occurrences(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) ++n;
  return n;
}

ErrorCode parse_error(const std::string& text) {
  try {
    surface_from_json(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "parsed: " << text;
  return ErrorCode::kInvalidSurface;
}

TEST(SurfaceJsonTest, RoundTrip) {
  testing::Rng rng(14);
  for (int round = 0; round < 60; ++round) {
    Surface s = testing::random_surface(rng, 7, 3);
    if (round % 3 == 0) s = s.with_open(true);
    const std::string text = surface_to_json(s);
    const Surface t = surface_from_json(text);
    EXPECT_EQ(t.rects(), s.rects());
    EXPECT_EQ(t.glue(), s.glue());
    EXPECT_EQ(t.base(), s.base());
    EXPECT_EQ(t.is_open(), s.is_open());
    EXPECT_EQ(surface_to_json(t), text);
    EXPECT_EQ(surface_to_json(t, -1).find('\n'), std::string::npos);
    EXPECT_TRUE(isomorphic(s, t));
  }
}

TEST(SurfaceJsonTest, RationalStrings) {
  const Surface s({RatRect(Rational(-1, 3), Rational(2, 4), 0, 1)}, {}, Anchor{0, {0, Rational(1, 2)}});
  const std::string text = surface_to_json(s, -1);
  EXPECT_NE(text.find("\"-1/3\""), std::string::npos);
  EXPECT_NE(text.find("\"1/2\""), std::string::npos);
  EXPECT_NE(text.find("\"version\":1"), std::string::npos);
}

TEST(SurfaceJsonTest, Malformed) {
  EXPECT_EQ(parse_error("not json"), ErrorCode::kMalformedInput);
  EXPECT_EQ(parse_error("{}"), ErrorCode::kMalformedInput);
  EXPECT_EQ(parse_error(R"({"version":2,"rects":[["0","1","0","1"]],"glue":[],"base":{"rect":0,"x":"0","y":"0"}})"),
            ErrorCode::kMalformedInput);
  EXPECT_EQ(parse_error(R"({"version":1,"rects":[["0","0","0","1"]],"glue":[],"base":{"rect":0,"x":"0","y":"0"}})"),
            ErrorCode::kMalformedInput);
  EXPECT_EQ(parse_error(R"({"version":1,"rects":[["0","1","0","1"]],"glue":[[0,3]],"base":{"rect":0,"x":"0","y":"0"}})"),
            ErrorCode::kMalformedInput);
  EXPECT_EQ(parse_error(R"({"version":1,"rects":[["0","1","0","x"]],"glue":[],"base":{"rect":0,"x":"0","y":"0"}})"),
            ErrorCode::kMalformedInput);
}

TEST(SurfaceJsonTest, InvalidSurfacesStillParse) {
  const std::string butterfly =
      R"({"version":1,"rects":[["0","1","0","1"],["1","2","1","2"]],"glue":[[0,1]],"base":{"rect":0,"x":"1/2","y":"1/2"}})";
  const Surface s = surface_from_json(butterfly);
  EXPECT_FALSE(validate(s).ok());
}

TEST(LoopJsonTest, RoundTrip) {
  testing::Rng rng(15);
  for (int round = 0; round < 30; ++round) {
    const RectiLoop loop = testing::random_loop(rng, 2 + static_cast<int>(rng() % 4), 5);
    EXPECT_EQ(loop_from_json(loop_to_json(loop)), loop);
  }
  EXPECT_THROW(loop_from_json(R"({"version":1,"vertices":[["0","0"],["1","1"]]})"), Error);
}

TEST(RenderTest, OnePolygonPerBoundaryLoop) {
  const std::string annulus = render_svg(testing::square_annulus());
  EXPECT_EQ(occurrences(annulus, "<polygon"), 2u);
  EXPECT_EQ(occurrences(annulus, "class=\"basepoint\""), 1u);
  const std::string stairs = render_svg(testing::staircase(9));
  EXPECT_EQ(occurrences(stairs, "<polygon"), 1u);
  EXPECT_GT(occurrences(stairs, "class=\"face\""), 0u);
  EXPECT_EQ(render_svg(testing::staircase(9)), stairs);
}

}  // namespace
}  // namespace rectsurf
