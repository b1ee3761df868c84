#include <benchmark/benchmark.h>

#include "dm/ecq.hpp"

using namespace dm;

namespace {

EllCurve family_Ea(long a) {
    Rat A(a);
    return EllCurve::from_a246(2 * A * A, A * A * A * A - 4, Rat(0));
}

void BM_canonical_height(benchmark::State& state) {
    long a = state.range(0);
    EllCurve E = family_Ea(a);
    EPoint P(Rat(-(a * a)), Rat(2 * a));
    for (auto _ : state) benchmark::DoNotOptimize(canonical_height(E, P, 1e-3));
}

void BM_group_law_mul(benchmark::State& state) {
    EllCurve E = family_Ea(237);
    EPoint P(Rat(-237 * 237), Rat(474));
    for (auto _ : state) benchmark::DoNotOptimize(E.mul(Int(static_cast<long>(state.range(0))), P));
}

void BM_torsion(benchmark::State& state) {
    EllCurve E = family_Ea(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(torsion_subgroup(E));
}

}  // namespace

BENCHMARK(BM_canonical_height)->Arg(3)->Arg(21)->Arg(237)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_group_law_mul)->Arg(6)->Arg(12)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_torsion)->Arg(3)->Arg(237)->Unit(benchmark::kMillisecond);
