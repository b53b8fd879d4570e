#include <benchmark/benchmark.h>

#include <numbers>

#include "splataa/errorlab.hpp"

using namespace splataa;

namespace {

void BM_OracleCell(benchmark::State& state) {
    const RotatedPixel px{{0.0, 0.25}, 1.0, std::numbers::pi / 5};
    for (auto _ : state)
        benchmark::DoNotOptimize(oracle_integral(px, 0.3, 1.7, int(state.range(0))));
}

void BM_ApproxCell(benchmark::State& state) {
    const RotatedPixel px{{0.0, 0.25}, 1.0, std::numbers::pi / 5};
    for (auto _ : state) benchmark::DoNotOptimize(approx_integral(px, 0.3, 1.7));
}

void BM_SweepRow(benchmark::State& state) {
    ErrorGridSpec spec = ErrorGridSpec::defaults();
    spec.theta_values = {std::numbers::pi / 8};
    spec.y_c_values = {0.15};
    spec.oracle_samples = int(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_sweep(spec, 1).mean_rel_err);
}

}  // namespace

BENCHMARK(BM_OracleCell)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ApproxCell);
BENCHMARK(BM_SweepRow)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);
