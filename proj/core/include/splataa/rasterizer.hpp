#pragma once

#include <span>
#include <vector>

#include "splataa/blending.hpp"
#include "splataa/filters.hpp"
#include "splataa/projection.hpp"
#include "splataa/types.hpp"

namespace splataa {

// Splat indices for one tile, ascending depth (ties by index).
struct TileBin {
    int tile_x = 0;
    int tile_y = 0;
    std::vector<int> splats;
};

// Bins every splat into each tile its cutoff disc intersects. Tiles are
// aligned to multiples of tile_size from the image origin; the returned grid
// covers the full image, empty bins included.
std::vector<TileBin> bin_and_sort(std::span<const Splat2D> splats, int width, int height,
                                  int tile_size, double cutoff_sigmas);

// Full pipeline: activate -> project -> filter -> SH color -> bin -> blend.
// train may be null unless filter_mode is ScaleAdaptive. Deterministic for
// fixed inputs regardless of the worker count (threads = 0: hardware).
ImageBuffer render(const GaussianCloud& cloud, const CameraModel& render_cam,
                   const TrainingCameraSet* train, const RenderSettings& settings,
                   int threads = 0);

// Renders only [x0, x0+w) x [y0, y0+h), bit-identical to the same crop of the
// full render (tiles stay aligned to the full-image grid).
ImageBuffer render_region(const GaussianCloud& cloud, const CameraModel& render_cam,
                          const TrainingCameraSet* train, const RenderSettings& settings,
                          int x0, int y0, int w, int h, int threads = 0);

// Stats of the last projection stage, for CLI reporting.
struct RenderStats {
    std::size_t input_gaussians = 0;
    std::size_t projected = 0;
    std::size_t culled = 0;
};

// As render(), also reporting how many primitives survived projection.
ImageBuffer render_with_stats(const GaussianCloud& cloud, const CameraModel& render_cam,
                              const TrainingCameraSet* train, const RenderSettings& settings,
                              RenderStats& stats, int threads = 0);

}  // namespace splataa
