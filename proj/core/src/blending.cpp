#include "splataa/blending.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "splataa/errors.hpp"

namespace splataa {

double gaussian_cdf(double t) { return 0.5 * std::erfc(-t * std::numbers::sqrt2 / 2.0); }

double alpha_point(const Splat2D& splat, const Vec2& x, double alpha_max) {
    if (!(splat.cov_px.det() > 0.0))
        throw SingularCovariance("alpha_point: covariance is not invertible");
    const Vec2 d = x - splat.mean_px;
    const double e = -0.5 * d.dot(splat.inv_cov * d);
    if (e > 0.0) return 0.0;  // outside numeric validity, treat as no coverage
    return std::min(alpha_max, splat.opacity * splat.comp_factor * std::exp(e));
}

PixelBounds rotated_pixel_bounds(const PixelRegion& pixel, const Splat2D& splat) {
    const double scale = 1.0 / (std::sin(splat.theta) + std::cos(splat.theta));
    const double half = 0.5 * pixel.side * scale;

    PixelBounds b;
    b.x_min = b.y_min = std::numeric_limits<double>::infinity();
    b.x_max = b.y_max = -std::numeric_limits<double>::infinity();
    for (int sx : {-1, 1})
        for (int sy : {-1, 1}) {
            const Vec2 corner{pixel.center.x + sx * half - splat.mean_px.x,
                              pixel.center.y + sy * half - splat.mean_px.y};
            const double px = corner.dot(splat.v_long);
            const double py = corner.dot(splat.v_short);
            b.x_min = std::min(b.x_min, px);
            b.x_max = std::max(b.x_max, px);
            b.y_min = std::min(b.y_min, py);
            b.y_max = std::max(b.y_max, py);
        }
    return b;
}

double alpha_integrated(const Splat2D& splat, const PixelRegion& pixel, double alpha_max) {
    if (!(splat.lambda_short > 0.0))
        throw SingularCovariance("alpha_integrated: covariance is not positive definite");

    const PixelBounds b = rotated_pixel_bounds(pixel, splat);
    const double sl = splat.sigma_long();
    const double ss = splat.sigma_short();
    const double mass_x = gaussian_cdf(b.x_max / sl) - gaussian_cdf(b.x_min / sl);
    const double mass_y = gaussian_cdf(b.y_max / ss) - gaussian_cdf(b.y_min / ss);
    const double mean = 2.0 * std::numbers::pi * sl * ss * mass_x * mass_y /
                        (pixel.side * pixel.side);
    return std::min(alpha_max, splat.opacity * splat.comp_factor * mean);
}

Rgb blend_tile_pixel(std::span<const Splat2D> splats, const PixelRegion& pixel,
                     const RenderSettings& settings) {
#ifndef NDEBUG
    for (std::size_t i = 1; i < splats.size(); ++i)
        if (splats[i - 1].depth > splats[i].depth)
            throw UnsortedInput("blend_tile_pixel: splats are not depth sorted");
#endif

    const bool supersample = settings.blend_mode == BlendMode::SuperSample;
    const int grid = supersample ? settings.ss_grid : 1;
    const int samples = grid * grid;

    // Sub-pixel centers; the single accumulator of the other modes is the
    // degenerate 1x1 grid.
    std::vector<Vec2> centers(samples);
    for (int iy = 0; iy < grid; ++iy)
        for (int ix = 0; ix < grid; ++ix)
            centers[iy * grid + ix] = {
                pixel.center.x + ((ix + 0.5) / grid - 0.5) * pixel.side,
                pixel.center.y + ((iy + 0.5) / grid - 0.5) * pixel.side};

    SubPixelState state(samples);
    int live = samples;
    for (const Splat2D& splat : splats) {
        if (live == 0) break;
        for (int s = 0; s < samples; ++s) {
            if (state.transmittance[s] < settings.t_min) continue;
            double alpha;
            if (settings.blend_mode == BlendMode::Integrate) {
                alpha = alpha_integrated(splat, pixel, settings.alpha_max);
            } else {
                alpha = alpha_point(splat, centers[s], settings.alpha_max);
            }
            if (alpha < settings.alpha_min) continue;
            state.accumulate(s, alpha, splat.color);
            if (state.transmittance[s] < settings.t_min) --live;
        }
    }

    Rgb out;
    for (int s = 0; s < samples; ++s)
        out += state.color[s] + settings.background * state.transmittance[s];
    return out * (1.0 / samples);
}

}  // namespace splataa
