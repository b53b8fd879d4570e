#include <benchmark/benchmark.h>

#include "splataa/rasterizer.hpp"
#include "splataa/synth.hpp"

using namespace splataa;

namespace {

const SynthScene& checker_scene() {
    static const SynthScene scene = build_scene({CheckerWall{}, 0, 1.0});
    return scene;
}

void BM_Render(benchmark::State& state, FilterMode filter, BlendMode blend) {
    const SynthScene& scene = checker_scene();
    RenderSettings settings;
    settings.filter_mode = filter;
    settings.blend_mode = blend;
    const CameraModel cam = scene.cameras.cameras[0].scaled(0.5);
    for (auto _ : state) {
        ImageBuffer img = render(scene.cloud, cam, &scene.cameras, settings, 1);
        benchmark::DoNotOptimize(img.pixels.data());
    }
    state.SetItemsProcessed(state.iterations() * cam.width * cam.height);
}

}  // namespace

BENCHMARK_CAPTURE(BM_Render, sa_point, FilterMode::ScaleAdaptive, BlendMode::PointSample)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Render, sa_supersample, FilterMode::ScaleAdaptive, BlendMode::SuperSample)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Render, sa_integrate, FilterMode::ScaleAdaptive, BlendMode::Integrate)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Render, dilate_point, FilterMode::FixedDilation, BlendMode::PointSample)
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
