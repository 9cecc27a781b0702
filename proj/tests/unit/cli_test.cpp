#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "generators.hpp"
#include "rectsurf/io.hpp"
#include "rectsurf/morphism.hpp"

namespace rectsurf {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("rectsurf_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string save(const std::string& name, const Surface& s) { return write(name, surface_to_json(s)); }

  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return cli::run(args, out_, err_);
  }
  std::string out() const { return out_.str(); }

  fs::path dir_;
  std::ostringstream out_, err_;
};

const Rational kHalf(1, 2);

TEST_F(CliTest, ValidateAndExitCodes) {
  const std::string good = save("square.json", testing::unit_square());
  EXPECT_EQ(run({"validate", good}), cli::kOk);
  const Surface butterfly({RatRect(0, 1, 0, 1), RatRect(1, 2, 1, 2)}, {{0, 1}}, Anchor{0, {kHalf, kHalf}});
  EXPECT_EQ(run({"validate", save("butterfly.json", butterfly)}), cli::kDomainError);
  EXPECT_NE(out().find("boundary"), std::string::npos);
  EXPECT_EQ(run({"validate", write("bad.json", "{")}), cli::kMalformed);
  EXPECT_EQ(run({"chi", save("butterfly2.json", butterfly)}), cli::kDomainError);
  EXPECT_EQ(run({"nonsense"}), cli::kMalformed);
  EXPECT_EQ(run({"dev", good}), cli::kMalformed);
}

TEST_F(CliTest, PointQueries) {
  const std::string square = save("square.json", testing::unit_square());
  ASSERT_EQ(run({"dev", square, "1,1/4"}), cli::kOk);
  EXPECT_EQ(out(), "1/2 -1/4\n");
  ASSERT_EQ(run({"er", square, "1/2,1/2"}), cli::kOk);
  EXPECT_EQ(out(), "1/2\n");
  EXPECT_EQ(run({"dev", square, "3,3"}), cli::kDomainError);
  ASSERT_EQ(run({"rebase", square, "0,0"}), cli::kOk);
  const Surface moved = surface_from_json(out());
  EXPECT_EQ(moved.rects()[0], RatRect(0, 1, 0, 1));
  ASSERT_EQ(run({"chi", save("annulus.json", testing::square_annulus())}), cli::kOk);
  EXPECT_EQ(out(), "0\n");
  ASSERT_EQ(run({"classify", save("stairs.json", testing::staircase(9))}), cli::kOk);
  EXPECT_NE(out().find("isk"), std::string::npos);
}

TEST_F(CliTest, ImmersionOfSquareIntoBiggerSquare) {
  const std::string small = save("small.json", testing::unit_square());
  const std::string big = save("big.json", testing::square(-1, 2, {kHalf, kHalf}));
  ASSERT_EQ(run({"immersion", small, big}), cli::kOk);
  EXPECT_NE(out().find(" -> "), std::string::npos);
  EXPECT_NE(out().find("embedding: true"), std::string::npos);
  ASSERT_EQ(run({"immersion", big, small}), cli::kOk);
  EXPECT_EQ(out().rfind("none\n", 0), 0u);
  EXPECT_NE(out().find("stopped:"), std::string::npos);
}

TEST_F(CliTest, FuseCommutes) {
  testing::Rng rng(5);
  for (int round = 0; round < 8; ++round) {
    const std::string a = save("a.json", testing::random_surface(rng, 4));
    const std::string b = save("b.json", testing::random_surface(rng, 4));
    ASSERT_EQ(run({"fuse", a, b}), cli::kOk);
    const std::string ab = write("ab.json", out());
    ASSERT_EQ(run({"fuse", b, a}), cli::kOk);
    const std::string ba = write("ba.json", out());
    ASSERT_EQ(run({"immersion", ab, ba}), cli::kOk);
    EXPECT_NE(out().find("embedding: true"), std::string::npos);
    ASSERT_EQ(run({"immersion", ba, ab}), cli::kOk);
    EXPECT_NE(out().find("embedding: true"), std::string::npos);
  }
}

TEST_F(CliTest, CoreActAndImages) {
  const std::string a = save("a.json", testing::square(0, 1, {0, 0}));
  const std::string b = save("b.json", testing::square(-1, 0, {0, 0}));
  ASSERT_EQ(run({"core", a, b}), cli::kOk);
  EXPECT_EQ(out(), "empty\n");
  ASSERT_EQ(run({"act", a, "2,0,0,1"}), cli::kOk);
  EXPECT_EQ(surface_from_json(out()).rects()[0], RatRect(0, 2, 0, 1));
  EXPECT_EQ(run({"act", a, "1,1,0,1"}), cli::kDomainError);
  ASSERT_EQ(run({"images", save("stairs.json", testing::staircase(6))}), cli::kOk);
  EXPECT_NE(out().find("rects"), std::string::npos);
}

TEST_F(CliTest, DisksAndSmallestDisk) {
  const std::string loop = write("loop.json", R"({"version":1,"vertices":[["0","0"],["1","0"],["1","1"],["0","1"]]})");
  ASSERT_EQ(run({"disks", loop}), cli::kOk);
  EXPECT_NE(out(), "[]\n");
  EXPECT_NE(out().find("\"rects\""), std::string::npos);
  const std::string cw = write("cw.json", R"({"version":1,"vertices":[["0","0"],["0","1"],["1","1"],["1","0"]]})");
  ASSERT_EQ(run({"disks", cw}), cli::kOk);
  EXPECT_EQ(out(), "[]\n");
  const std::string host = save("host.json", testing::square(-1, 4, {kHalf, kHalf}));
  const std::string annulus = save("annulus.json", testing::square_annulus());
  ASSERT_EQ(run({"smallest-disk", host, annulus}), cli::kOk);
  EXPECT_TRUE(isomorphic(surface_from_json(out()), testing::square(0, 3, {kHalf, kHalf})));
}

TEST_F(CliTest, LimitAndEnumerate) {
  std::vector<std::string> args{"limit", "--direct"};
  for (int n = 1; n <= 3; ++n) args.push_back(save("s" + std::to_string(n) + ".json", testing::square(-n, n, {0, 0})));
  ASSERT_EQ(run(args), cli::kOk);
  EXPECT_NE(out().find("\"certificate\""), std::string::npos);
  args.push_back("--probes");
  args.push_back("subbasis:1,1");
  EXPECT_EQ(run(args), cli::kOk);
  EXPECT_EQ(run({"limit", args[2]}), cli::kMalformed);

  ASSERT_EQ(run({"enumerate", "--max-rects", "1", "--denom", "1"}), cli::kOk);
  std::istringstream lines(out());
  int count = 0;
  for (std::string line; std::getline(lines, line);) {
    EXPECT_NO_THROW(surface_from_json(line));
    ++count;
  }
  EXPECT_EQ(count, 9);
}

TEST_F(CliTest, Render) {
  const std::string annulus = save("annulus.json", testing::square_annulus());
  const std::string svg = (dir_ / "out.svg").string();
  ASSERT_EQ(run({"render", annulus, svg}), cli::kOk);
  const std::string text = read_file(svg);
  std::size_t polygons = 0;
  for (std::size_t at = text.find("<polygon"); at != std::string::npos; at = text.find("<polygon", at + 1)) ++polygons;
  EXPECT_EQ(polygons, 2u);
  EXPECT_NE(text.find("opacity"), std::string::npos);
}

}  // namespace
}  // namespace rectsurf
