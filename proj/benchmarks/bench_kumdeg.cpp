#include <benchmark/benchmark.h>

#include "kumdeg/ampleness.hpp"
#include "kumdeg/degree_enumeration.hpp"
#include "kumdeg/kummer_lattice.hpp"
#include "kumdeg/mukai.hpp"
#include "kumdeg/representations.hpp"

using namespace kumdeg;

namespace {

void BM_VerifyRange(benchmark::State& state, Problem p, std::int64_t lo) {
  const std::int64_t hi = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(verify_range(p, lo, hi, 1, Strategy::Exhaustive));
  state.SetItemsProcessed(state.iterations() * (hi - lo + 1));
}

void BM_FiveSquares(benchmark::State& state) { BM_VerifyRange(state, Problem::FiveSquares, 34); }
void BM_FifteenBoundedSquares(benchmark::State& state) { BM_VerifyRange(state, Problem::FifteenBoundedSquares, 36); }
void BM_Eq1(benchmark::State& state) { BM_VerifyRange(state, Problem::Eq1, 164); }
void BM_Eq7(benchmark::State& state) { BM_VerifyRange(state, Problem::Eq7, 30); }

void BM_TheoremMainSet(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(theorem_main_set(state.range(0), true, 1));
}

void BM_Half8(benchmark::State& state) {
  EnumerationOptions opts;
  opts.jobs = 1;
  for (auto _ : state) benchmark::DoNotOptimize(degrees_half8(state.range(0), opts));
}

void BM_Integrality(benchmark::State& state) {
  const auto gens = IntegralityGenerators::defaults(1);
  KummerClass l = KummerClass::uniform(1, 21, 3);
  l.e2[15] = 1;
  for (auto _ : state) benchmark::DoNotOptimize(is_integral(l, gens));
}

void BM_ViolatorSearch(benchmark::State& state) {
  const auto l = KummerClass::uniform(1, 10, 2);
  const auto ns = AbelianNs::product(1);
  const SearchBounds bounds{state.range(0), state.range(0), false};
  for (auto _ : state) benchmark::DoNotOptimize(find_orthogonal_violator(l, ns, bounds, 1));
}

void BM_WallSearch(benchmark::State& state) {
  const auto data = NumericalSurfaceData::custom(SurfaceKind::Abelian, {{0, 1}, {1, 0}}, {1, 1});
  const MukaiVector v{1, {0, 0}, -state.range(0) - 1};
  for (auto _ : state) benchmark::DoNotOptimize(wall_search(v, data, {}, 1));
}

}  // namespace

BENCHMARK(BM_FiveSquares)->Arg(1000)->Arg(5000);
BENCHMARK(BM_FifteenBoundedSquares)->Arg(500)->Arg(2000);
BENCHMARK(BM_Eq1)->Arg(1000)->Arg(3000);
BENCHMARK(BM_Eq7)->Arg(1000)->Arg(3000);
BENCHMARK(BM_TheoremMainSet)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Half8)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Integrality);
BENCHMARK(BM_ViolatorSearch)->Arg(4)->Arg(8);
BENCHMARK(BM_WallSearch)->Arg(1)->Arg(6);
BENCHMARK_MAIN();
