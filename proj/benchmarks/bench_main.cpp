#include <benchmark/benchmark.h>

#include "apcong/abelian.hpp"
#include "apcong/eigendata.hpp"
#include "support/groups.hpp"

namespace {

using namespace apcong;

void BM_CloseGL2(benchmark::State& state) {
  const FieldSpec F = FieldSpec::make(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(testgroups::gl2(F).order());
}
BENCHMARK(BM_CloseGL2)->Arg(3)->Arg(7)->Arg(13)->Unit(benchmark::kMillisecond);

void BM_AnalyzeGL2(benchmark::State& state) {
  const MatGroup G = testgroups::gl2(FieldSpec::make(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(analyze(G).density);
}
BENCHMARK(BM_AnalyzeGL2)->Arg(3)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_DeltaSeries(benchmark::State& state) {
  const auto T = static_cast<std::size_t>(state.range(0));
  const std::uint64_t m = static_cast<std::uint64_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(delta_coeffs(T, m).truncation());
}
BENCHMARK(BM_DeltaSeries)->Args({1000, 23})->Args({10000, 23})->Args({10000, 0})->Unit(benchmark::kMillisecond);

void BM_PointCount(benchmark::State& state) {
  const EllipticCurve E{"338d", {1, 1, 0, 504, -13112}, 338};
  const std::int64_t pmax = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(build_dataset(E, FieldSpec::make(5), pmax).samples.size());
}
BENCHMARK(BM_PointCount)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
