#include <benchmark/benchmark.h>

#include "contain/criteria.h"
#include "contain/generators.h"
#include "contain/scaling.h"

using namespace contain;

static void BM_DiscHkm(benchmark::State& state) {
  const DiscPair d = GenDiscPair();
  for (auto _ : state) benchmark::DoNotOptimize(CheckHkm(d.b, d.a, Variant::kExact));
}
BENCHMARK(BM_DiscHkm);

static void BM_DiscScale(benchmark::State& state) {
  const DiscPair d = GenDiscPair();
  const Variant v = state.range(0) == 0 ? Variant::kExact : Variant::kPositive;
  for (auto _ : state) benchmark::DoNotOptimize(MaxScale(d.a, d.b, v));
}
BENCHMARK(BM_DiscScale)->Arg(0)->Arg(1);

// Choi system size grows as (k l)^2; ellipsoids in balls of growing dimension.
static void BM_EllipsoidHkm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const LinearPencil a = EllipsoidPencil(Vector::LinSpaced(n, 0.5, 1.0));
  const LinearPencil b = BallPencil(n, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(CheckHkm(a, b, Variant::kExact));
}
BENCHMARK(BM_EllipsoidHkm)->DenseRange(2, 6, 2);

static void BM_SpectrahedronFacets(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const LinearPencil a = GenRandomSpectrahedron(n, 4, 1, true);
  HPolyhedron q = GenRandomPolytope(n, 2 * n + 2, 2);
  q.normals *= 0.05;
  for (auto _ : state) benchmark::DoNotOptimize(CheckSInH(a, q));
}
BENCHMARK(BM_SpectrahedronFacets)->DenseRange(2, 6, 2);

static void BM_Sat3Vertices(benchmark::State& state) {
  const Sat3Instance phi{static_cast<int>(state.range(0)), {{1, 2, -3}, {-1, 2, 3}, {1, -2}, {-2, -3}}};
  for (auto _ : state) benchmark::DoNotOptimize(VertexContainment(GenSat3Reduction(phi)));
}
BENCHMARK(BM_Sat3Vertices)->DenseRange(3, 6, 1);

static void BM_KhatriRao(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const Matrix a = Matrix::Random(4 * m, 4 * m);
  const Matrix b = Matrix::Random(4 * m, 4 * m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(KhatriRao(BlockMatrix(a, 4, 4, m), BlockMatrix(b, 4, 4, m)));
  }
}
BENCHMARK(BM_KhatriRao)->RangeMultiplier(2)->Range(2, 16);
BENCHMARK_MAIN();
