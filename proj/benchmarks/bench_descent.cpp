#include <benchmark/benchmark.h>

#include "dm/descent.hpp"

using namespace dm;

namespace {

void BM_run_descent(benchmark::State& state) {
    Int a(static_cast<long>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(run_descent(a));
}

void BM_local_solubility(benchmark::State& state) {
    // the parity cell (2, 1) at p = 2, certified insoluble by lifting
    SClass b1{2}, b2{0};
    TorsorSystem T(Int(3), b1, b2);
    for (auto _ : state) benchmark::DoNotOptimize(local_solubility_qp(T, Int(2), 8));
}

}  // namespace

BENCHMARK(BM_run_descent)->Arg(3)->Arg(237)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_local_solubility)->Unit(benchmark::kMillisecond);
