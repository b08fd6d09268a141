#include <benchmark/benchmark.h>

#include <random>

#include "bfss/bordered.hpp"
#include "bfss/khovanov.hpp"
#include "bfss/pipeline.hpp"
#include "bfss/sscube.hpp"

using namespace bfss;

static void BM_AlgebraConstruction(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    StrandsAlgebra A(Pmc::linear(k));
    benchmark::DoNotOptimize(A.size());
  }
}
BENCHMARK(BM_AlgebraConstruction)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_AlgebraProducts(benchmark::State& state) {
  StrandsAlgebra A(Pmc::linear(static_cast<int>(state.range(0))));
  const auto basis = A.basis(A.pmc().genus());
  for (auto _ : state) {
    long n = 0;
    for (int a : basis)
      for (int b : A.with_left(A.right(a))) n += A.mul(a, b) >= 0;
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_AlgebraProducts)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_StructureConstants(benchmark::State& state) {
  StrandsAlgebra A(Pmc::linear(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(verify_structure_constants(A, 2).ok());
}
BENCHMARK(BM_StructureConstants)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_TorusDehnTwistDA(benchmark::State& state) {
  StrandsAlgebra A(Pmc::linear(1));
  const AABimodule mor = cfaa_identity(A);
  const CurveData cd = curve_data(A, 1);
  for (auto _ : state) {
    DABimodule da = reduce(box(mor, cfdd_dehn_twist(A, cd, +1)));
    benchmark::DoNotOptimize(da.size());
  }
}
BENCHMARK(BM_TorusDehnTwistDA)->Unit(benchmark::kMillisecond);

// Genus-1 braids of growing length through a shared pipeline.
static void BM_PipelineGenus1(benchmark::State& state) {
  Pipeline p(1);
  std::mt19937 rng(1);
  PlatDiagram d{4, {}};
  for (int i = 0; i < state.range(0); ++i) d.word.push_back({1 + static_cast<int>(rng() % 2), rng() % 2 ? 1 : -1});
  p.run(d);
  for (auto _ : state) benchmark::DoNotOptimize(p.run(d).ss.e_infty_total);
}
BENCHMARK(BM_PipelineGenus1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_ReducedKhovanov(benchmark::State& state) {
  PlatDiagram d{4, {}};
  for (int i = 0; i < state.range(0); ++i) d.word.push_back({2, 1});
  for (auto _ : state) benchmark::DoNotOptimize(reduced_kh(d));
}
BENCHMARK(BM_ReducedKhovanov)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

static void BM_SpectralSequenceOfKhCube(benchmark::State& state) {
  Pipeline p(1);
  PlatDiagram d{4, {}};
  for (int i = 0; i < state.range(0); ++i) d.word.push_back({1 + i % 2, i % 3 ? 1 : -1});
  const ChainComplex C = p.complex(d);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_sequence(C).e_infty_total);
  state.counters["generators"] = C.size();
}
BENCHMARK(BM_SpectralSequenceOfKhCube)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
