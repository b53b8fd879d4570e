#include <benchmark/benchmark.h>

#include "splataa/blending.hpp"

using namespace splataa;

namespace {

Splat2D bench_splat() {
    Splat2D s;
    s.mean_px = {0.3, -0.2};
    s.cov_px = {2.0, 0.7, 0.7, 1.2};
    s.opacity = 0.8;
    s.comp_factor = 0.9;
    s.refresh_derived();
    return s;
}

void BM_AlphaPoint(benchmark::State& state) {
    const Splat2D s = bench_splat();
    double x = 0.0;
    for (auto _ : state) {
        x += 1e-6;
        benchmark::DoNotOptimize(alpha_point(s, {x, 0.4}));
    }
}

void BM_AlphaIntegrated(benchmark::State& state) {
    const Splat2D s = bench_splat();
    double x = 0.0;
    for (auto _ : state) {
        x += 1e-6;
        benchmark::DoNotOptimize(alpha_integrated(s, {{x, 0.4}, 1.0}));
    }
}

void BM_SuperSamplePixel(benchmark::State& state) {
    const Splat2D s = bench_splat();
    RenderSettings settings;
    settings.blend_mode = BlendMode::SuperSample;
    settings.ss_grid = int(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(blend_tile_pixel({&s, 1}, {{0.5, 0.5}, 1.0}, settings));
    }
}

}  // namespace

BENCHMARK(BM_AlphaPoint);
BENCHMARK(BM_AlphaIntegrated);
BENCHMARK(BM_SuperSamplePixel)->Arg(2)->Arg(3)->Arg(4)->Arg(8);
