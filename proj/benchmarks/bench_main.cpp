#include <benchmark/benchmark.h>

#include "rectsurf/disks.hpp"
#include "rectsurf/lattice.hpp"
#include "rectsurf/morphism.hpp"
#include "rectsurf/transform.hpp"

namespace {

using namespace rectsurf;

const Rational kHalf(1, 2);

// Bars around the hole (1,2)^2, each glued to the previous one.
Surface staircase(int n) {
  const RatRect bars[4] = {RatRect(0, 3, 0, 1), RatRect(2, 3, 0, 3), RatRect(0, 3, 2, 3), RatRect(0, 1, 0, 3)};
  std::vector<RatRect> rects;
  std::vector<std::pair<int, int>> glue;
  for (int i = 0; i < n; ++i) {
    rects.push_back(bars[i % 4]);
    if (i > 0) glue.emplace_back(i - 1, i);
  }
  return Surface(rects, glue, Anchor{0, {kHalf, kHalf}});
}

// n x n checkerboard of unit squares, fully glued.
Surface board(int n) {
  std::vector<RatRect> rects;
  std::vector<std::pair<int, int>> glue;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      rects.emplace_back(i, i + 1, j, j + 1);
      const int k = i * n + j;
      if (j > 0) glue.emplace_back(k - 1, k);
      if (i > 0) glue.emplace_back(k - n, k);
    }
  }
  return Surface(rects, glue, Anchor{0, {kHalf, kHalf}});
}

void BM_ComplexBuild(benchmark::State& state) {
  const Surface s = board(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const Surface t(s.rects(), s.glue(), s.base());
    benchmark::DoNotOptimize(t.complex().class_count());
  }
}
BENCHMARK(BM_ComplexBuild)->Arg(4)->Arg(8)->Arg(16);

void BM_FindImmersion(benchmark::State& state) {
  const Surface a = staircase(static_cast<int>(state.range(0)));
  const Surface b = staircase(static_cast<int>(state.range(0)) + 4);
  for (auto _ : state) benchmark::DoNotOptimize(find_immersion(a, b).map.has_value());
}
BENCHMARK(BM_FindImmersion)->Arg(4)->Arg(8)->Arg(16);

void BM_Fuse(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<Surface> inputs;
  for (int i = 1; i <= n; ++i) inputs.push_back(staircase(i));
  for (auto _ : state) benchmark::DoNotOptimize(fuse(inputs).surface.rect_count());
}
BENCHMARK(BM_Fuse)->Arg(4)->Arg(8);

void BM_EmbeddingRadius(benchmark::State& state) {
  const Surface s = staircase(static_cast<int>(state.range(0)));
  const Anchor p{0, {Rational(3, 4), Rational(1, 3)}};
  for (auto _ : state) benchmark::DoNotOptimize(embedding_radius(s, p).squared);
}
BENCHMARK(BM_EmbeddingRadius)->Arg(4)->Arg(9);

void BM_DisksBoundedBy(benchmark::State& state) {
  const RectiLoop loop = boundary_loops(staircase(static_cast<int>(state.range(0))))[0];
  for (auto _ : state) benchmark::DoNotOptimize(disks_bounded_by(loop).size());
}
BENCHMARK(BM_DisksBoundedBy)->Arg(4)->Arg(6);

void BM_EnumerateSubbasis(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_subbasis(static_cast<int>(state.range(0)), 1).size());
}
BENCHMARK(BM_EnumerateSubbasis)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
