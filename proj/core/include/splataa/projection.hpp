#pragma once

#include <optional>
#include <span>

#include "splataa/types.hpp"

namespace splataa {

// Camera-space depth below which a primitive is culled.
inline constexpr double kNearPlane = 0.01;

struct EigenDecomposition2x2 {
    double lambda_long = 0.0;
    double lambda_short = 0.0;
    Vec2 v_long{1.0, 0.0};
    Vec2 v_short{0.0, 1.0};
    double theta = 0.0;  // angle between the long axis and pixel x-axis, in [0, pi/2)
};

// A projected primitive in pixel space.
struct Splat2D {
    Vec2 mean_px;
    Mat2 cov_px;             // after any filter has been applied
    double depth = 0.0;      // camera-space z
    double lambda_long = 0.0;
    double lambda_short = 0.0;
    Vec2 v_long{1.0, 0.0};
    Vec2 v_short{0.0, 1.0};
    double theta = 0.0;
    double opacity = 0.0;
    Rgb color;
    double comp_factor = 1.0;  // peak scaling that preserves splat mass under filtering
    Mat2 inv_cov;              // derived from cov_px, kept in sync by the filters

    double sigma_long() const { return std::sqrt(lambda_long); }
    double sigma_short() const { return std::sqrt(lambda_short); }

    // Recomputes eigen data and the inverse from cov_px. Negative eigenvalues
    // from fp noise are clamped to zero; a singular matrix leaves inv_cov zero.
    void refresh_derived();
};

// EWA projection of an activated primitive. Returns nullopt when the primitive
// is culled (behind the near plane, or its cutoff disc cannot reach the
// viewport). comp_factor of the result is 1; filtering is a separate stage.
std::optional<Splat2D> project(const ActivatedGaussian& g, const CameraModel& cam,
                               double cutoff_sigmas = 3.0);

// Closed-form symmetric 2x2 eigendecomposition. lambda_long >= lambda_short,
// unit eigenvectors, theta reduced to [0, pi/2). Isotropic input canonicalizes
// to theta = 0, v_long = (1,0). Throws Degenerate when lambda_short <= 0.
EigenDecomposition2x2 eigen2x2(const Mat2& cov);

// Binning radius in pixels: cutoff_sigmas * sqrt(lambda_long).
double cutoff_radius(const Splat2D& splat, double cutoff_sigmas);

// Spherical harmonics to RGB, reference coefficient ordering, clamped to [0,1]
// after the +0.5 DC offset. view_dir must be unit length.
Rgb eval_sh(std::span<const Vec3> sh, const Vec3& view_dir, int degree);

}  // namespace splataa
