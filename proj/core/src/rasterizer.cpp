#include "splataa/rasterizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "splataa/errors.hpp"

namespace splataa {

namespace {

bool disc_intersects_rect(const Vec2& center, double radius, double rx0, double ry0,
                          double rx1, double ry1) {
    const double px = std::clamp(center.x, rx0, rx1);
    const double py = std::clamp(center.y, ry0, ry1);
    const double dx = center.x - px, dy = center.y - py;
    return dx * dx + dy * dy <= radius * radius;
}

std::vector<Splat2D> prepare_splats(const GaussianCloud& cloud,
                                    const CameraModel& render_cam,
                                    const TrainingCameraSet* train,
                                    const RenderSettings& settings, RenderStats* stats) {
    if (cloud.empty()) throw EmptyCloud("render: cloud has no gaussians");
    settings.validate();
    render_cam.validate();
    if (settings.filter_mode == FilterMode::ScaleAdaptive && (!train || train->empty()))
        throw MissingTrainingCameras(
            "scale-adaptive filtering needs the training camera registry");

    int ref_idx = -1;
    const CameraModel* ref_cam = nullptr;
    if (settings.filter_mode == FilterMode::ScaleAdaptive) {
        ref_idx = select_reference_camera(render_cam, *train);
        ref_cam = &train->cameras[ref_idx];
    }

    const Vec3 cam_center = render_cam.camera_center_world();
    std::vector<Splat2D> splats;
    splats.reserve(cloud.size());

    for (const Gaussian3D& g : cloud.gaussians) {
        const ActivatedGaussian a = activate(g);
        std::optional<Splat2D> maybe = project(a, render_cam, settings.cutoff_sigmas);
        if (!maybe) continue;
        Splat2D splat = std::move(*maybe);

        switch (settings.filter_mode) {
            case FilterMode::None:
                break;
            case FilterMode::FixedDilation:
                splat = fixed_dilation(std::move(splat), settings.sigma_l);
                // The reference rasterizer dilates without rescaling the peak;
                // keep that behavior so its scale-mismatch artifacts reproduce.
                splat.comp_factor = 1.0;
                break;
            case FilterMode::ScaleAdaptive: {
                double z_train = (ref_cam->world_to_camera(a.mean)).z;
                if (z_train <= kNearPlane) z_train = kNearPlane;
                const ScaleRatio ratio = compute_scale_ratio(render_cam, *train, ref_idx,
                                                             splat.depth, z_train);
                splat = scale_adaptive(std::move(splat), settings.sigma_l, ratio);
                break;
            }
        }

        // Unfiltered (or sigma_l = 0) splats can stay degenerate; skip them.
        if (!(splat.lambda_short > 0.0) || !(splat.cov_px.det() > 0.0)) continue;

        const Vec3 dir = (a.mean - cam_center).normalized();
        splat.color = eval_sh(a.sh, dir, cloud.sh_degree);
        splats.push_back(std::move(splat));
    }

    if (stats) {
        stats->input_gaussians = cloud.size();
        stats->projected = splats.size();
        stats->culled = cloud.size() - splats.size();
    }
    return splats;
}

}  // namespace

std::vector<TileBin> bin_and_sort(std::span<const Splat2D> splats, int width, int height,
                                  int tile_size, double cutoff_sigmas) {
    const int tiles_x = (width + tile_size - 1) / tile_size;
    const int tiles_y = (height + tile_size - 1) / tile_size;

    std::vector<TileBin> bins(std::size_t(tiles_x) * tiles_y);
    for (int ty = 0; ty < tiles_y; ++ty)
        for (int tx = 0; tx < tiles_x; ++tx) {
            TileBin& bin = bins[std::size_t(ty) * tiles_x + tx];
            bin.tile_x = tx;
            bin.tile_y = ty;
        }

    for (int i = 0; i < int(splats.size()); ++i) {
        const Splat2D& s = splats[i];
        const double radius = cutoff_radius(s, cutoff_sigmas);
        const int tx0 = std::max(0, int(std::floor((s.mean_px.x - radius) / tile_size)));
        const int tx1 =
            std::min(tiles_x - 1, int(std::floor((s.mean_px.x + radius) / tile_size)));
        const int ty0 = std::max(0, int(std::floor((s.mean_px.y - radius) / tile_size)));
        const int ty1 =
            std::min(tiles_y - 1, int(std::floor((s.mean_px.y + radius) / tile_size)));
        for (int ty = ty0; ty <= ty1; ++ty)
            for (int tx = tx0; tx <= tx1; ++tx) {
                const double rx0 = tx * double(tile_size), ry0 = ty * double(tile_size);
                if (disc_intersects_rect(s.mean_px, radius, rx0, ry0, rx0 + tile_size,
                                         ry0 + tile_size))
                    bins[std::size_t(ty) * tiles_x + tx].splats.push_back(i);
            }
    }

    for (TileBin& bin : bins)
        std::sort(bin.splats.begin(), bin.splats.end(), [&](int a, int b) {
            if (splats[a].depth != splats[b].depth) return splats[a].depth < splats[b].depth;
            return a < b;
        });
    return bins;
}

namespace {

ImageBuffer render_impl(const GaussianCloud& cloud, const CameraModel& render_cam,
                        const TrainingCameraSet* train, const RenderSettings& settings,
                        int x0, int y0, int w, int h, int threads, RenderStats* stats) {
    const std::vector<Splat2D> splats =
        prepare_splats(cloud, render_cam, train, settings, stats);
    const std::vector<TileBin> bins = bin_and_sort(
        splats, render_cam.width, render_cam.height, settings.tile_size,
        settings.cutoff_sigmas);

    const int tile = settings.tile_size;
    const int tiles_x = (render_cam.width + tile - 1) / tile;

    // Tiles of the full-image grid that overlap the requested region.
    std::vector<int> jobs;
    const int jtx0 = x0 / tile, jtx1 = (x0 + w - 1) / tile;
    const int jty0 = y0 / tile, jty1 = (y0 + h - 1) / tile;
    for (int ty = jty0; ty <= jty1; ++ty)
        for (int tx = jtx0; tx <= jtx1; ++tx) jobs.push_back(ty * tiles_x + tx);

    ImageBuffer img(w, h);
    int workers = threads > 0 ? threads : int(std::thread::hardware_concurrency());
    workers = std::max(1, std::min(workers, int(jobs.size())));

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        std::vector<Splat2D> tile_splats;
        for (;;) {
            const std::size_t j = next.fetch_add(1);
            if (j >= jobs.size()) return;
            const TileBin& bin = bins[jobs[j]];

            tile_splats.clear();
            tile_splats.reserve(bin.splats.size());
            for (int idx : bin.splats) tile_splats.push_back(splats[idx]);

            const int px0 = std::max(bin.tile_x * tile, x0);
            const int px1 = std::min((bin.tile_x + 1) * tile, x0 + w);
            const int py0 = std::max(bin.tile_y * tile, y0);
            const int py1 = std::min((bin.tile_y + 1) * tile, y0 + h);
            for (int py = py0; py < py1; ++py)
                for (int px = px0; px < px1; ++px) {
                    const PixelRegion pixel{{px + 0.5, py + 0.5}, 1.0};
                    Rgb c = blend_tile_pixel(tile_splats, pixel, settings);
                    c.r = std::clamp(c.r, 0.0, 1.0);
                    c.g = std::clamp(c.g, 0.0, 1.0);
                    c.b = std::clamp(c.b, 0.0, 1.0);
                    img.set(px - x0, py - y0, c);
                }
        }
    };

    std::vector<std::thread> pool;
    for (int i = 1; i < workers; ++i) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    return img;
}

}  // namespace

ImageBuffer render_region(const GaussianCloud& cloud, const CameraModel& render_cam,
                          const TrainingCameraSet* train, const RenderSettings& settings,
                          int x0, int y0, int w, int h, int threads) {
    return render_impl(cloud, render_cam, train, settings, x0, y0, w, h, threads, nullptr);
}

ImageBuffer render_with_stats(const GaussianCloud& cloud, const CameraModel& render_cam,
                              const TrainingCameraSet* train, const RenderSettings& settings,
                              RenderStats& stats, int threads) {
    return render_impl(cloud, render_cam, train, settings, 0, 0, render_cam.width,
                       render_cam.height, threads, &stats);
}

ImageBuffer render(const GaussianCloud& cloud, const CameraModel& render_cam,
                   const TrainingCameraSet* train, const RenderSettings& settings,
                   int threads) {
    return render_impl(cloud, render_cam, train, settings, 0, 0, render_cam.width,
                       render_cam.height, threads, nullptr);
}

}  // namespace splataa
