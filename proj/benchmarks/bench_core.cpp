#include <benchmark/benchmark.h>

#include <array>

#include "q4/analysis.hpp"
#include "q4/picard_fuchs.hpp"
#include "q4/winding.hpp"

namespace {

using namespace q4;

const std::array<MomentIndex, 6> kBasic{MomentIndex{0, 0}, MomentIndex{1, 0}, MomentIndex{0, 1},
                                        MomentIndex{1, 1}, MomentIndex{-1, 0}, MomentIndex{-1, 1}};

void BM_MomentsGreen(benchmark::State& state) {
  const auto p = make_params(4.0);
  for (auto _ : state) benchmark::DoNotOptimize(moments(kBasic, -0.5, p, Method::green, 1e-12));
}
BENCHMARK(BM_MomentsGreen);

void BM_MomentsArea2d(benchmark::State& state) {
  const auto p = make_params(4.0);
  for (auto _ : state) benchmark::DoNotOptimize(moments(kBasic, -0.5, p, Method::area2d, 1e-12));
}
BENCHMARK(BM_MomentsArea2d);

void BM_Propagate(benchmark::State& state) {
  const auto p = make_params(4.0);
  const Vec6 v = oracle_pf_vector(-0.5, p).values;
  for (auto _ : state) benchmark::DoNotOptimize(propagate(-0.5, v, -0.34, p));
}
BENCHMARK(BM_Propagate);

void BM_AnnulusBasis(benchmark::State& state) {
  const auto p = make_params(4.0);
  for (auto _ : state) benchmark::DoNotOptimize(AnnulusBasis(p, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_AnnulusBasis)->Arg(200)->Arg(400);

void BM_BoundPipeline(benchmark::State& state) {
  const AnnulusBasis basis(make_params(4.0), 200);
  const MuVector mu{0.5, -0.5, 0.5, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(bound_pipeline(basis, mu));
}
BENCHMARK(BM_BoundPipeline);

void BM_ContourTrace(benchmark::State& state) {
  const auto p = make_params(4.0);
  for (auto _ : state) benchmark::DoNotOptimize(ContourTrace(p));
}
BENCHMARK(BM_ContourTrace);

void BM_WindingCount(benchmark::State& state) {
  const auto p = make_params(4.0);
  const ContourTrace trace(p);
  const PolyPair pair({0.3, -1.1, 0.2}, {0.7, 0.4}, 2);
  for (auto _ : state) benchmark::DoNotOptimize(winding_count(pair, trace));
}
BENCHMARK(BM_WindingCount);

}  // namespace

BENCHMARK_MAIN();
