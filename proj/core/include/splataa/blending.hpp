#pragma once

#include <span>
#include <vector>

#include "splataa/projection.hpp"
#include "splataa/types.hpp"

namespace splataa {

// Axis-aligned pixel (or sub-region) in pixel coordinates.
struct PixelRegion {
    Vec2 center;
    double side = 1.0;
};

// Bounds of the rotated pixel in the splat's eigen frame, relative to the
// splat mean: x along v_long, y along v_short.
struct PixelBounds {
    double x_min = 0.0, x_max = 0.0;
    double y_min = 0.0, y_max = 0.0;
};

// Per-sub-pixel compositing state. Transmittances are non-increasing.
struct SubPixelState {
    explicit SubPixelState(int n) : transmittance(n, 1.0), color(n) {}

    void accumulate(int i, double alpha, const Rgb& c) {
        color[i] += c * (alpha * transmittance[i]);
        transmittance[i] *= (1.0 - alpha);
    }

    std::vector<double> transmittance;
    std::vector<Rgb> color;
};

// Standard normal CDF, accurate to well below 1e-7 absolute.
double gaussian_cdf(double t);

// alpha = min(alpha_max, opacity * comp_factor * exp(-0.5 d^T cov^-1 d)).
// Throws SingularCovariance when the filtered covariance is not invertible.
double alpha_point(const Splat2D& splat, const Vec2& x, double alpha_max = 0.99);

// Corner box of the pixel in the splat's eigen frame. Corners are first
// scaled about the pixel center by 1/(sin theta + cos theta) so the rotated
// box keeps the pixel's area, then projected onto v_long / v_short.
PixelBounds rotated_pixel_bounds(const PixelRegion& pixel, const Splat2D& splat);

// alpha = min(alpha_max, opacity * comp_factor * M), where M is the mean of
// the peak-1 Gaussian over the rotated pixel:
//   M = 2 pi s_l s_s (Phi(x_max/s_l) - Phi(x_min/s_l))
//                    (Phi(y_max/s_s) - Phi(y_min/s_s)) / side^2.
// The exact S -> infinity limit of sub-pixel averaging, up to the rotation.
double alpha_integrated(const Splat2D& splat, const PixelRegion& pixel,
                        double alpha_max = 0.99);

// Front-to-back composite of a depth-sorted splat list over one pixel, in the
// mode given by settings.blend_mode. The residual transmittance composites
// the background.
Rgb blend_tile_pixel(std::span<const Splat2D> splats, const PixelRegion& pixel,
                     const RenderSettings& settings);

}  // namespace splataa
