#include <benchmark/benchmark.h>

#include "dm/dmsearch.hpp"

using namespace dm;

namespace {

void BM_pullback(benchmark::State& state) {
    FamilyBundle B(Int(static_cast<long>(state.range(0))));
    const Int& a = B.a();
    EPoint e3(Rat(-(a * a) - 2), Rat(0));
    for (auto _ : state) benchmark::DoNotOptimize(pullback(B, WhichMap::phi1, e3));
}

void BM_torsion_difference(benchmark::State& state) {
    FamilyBundle B(Int(static_cast<long>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(torsion_difference_case(B));
}

void BM_solve_curve(benchmark::State& state) {
    Int a(static_cast<long>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(solve_curve(a));
}

}  // namespace

BENCHMARK(BM_pullback)->Arg(3)->Arg(237)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_torsion_difference)->Arg(3)->Arg(237)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_solve_curve)->Arg(3)->Iterations(1)->Unit(benchmark::kSecond);
