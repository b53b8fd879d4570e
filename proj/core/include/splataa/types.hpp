#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "splataa/math.hpp"

namespace splataa {

// Number of RGB spherical-harmonic coefficients for degree 3 (1 DC + 15 rest).
inline constexpr int kShCoeffCount = 16;

// A primitive as stored in a checkpoint: scales in log space, opacity as a
// logit, rotation possibly unnormalized. Activation is explicit so files
// round-trip bit-exactly.
struct Gaussian3D {
    Vec3 mean;                            // world units
    Vec3 log_scale;                       // exp() -> per-axis stddev
    Quat rotation;                        // (w,x,y,z)
    double opacity_logit = 0.0;           // sigmoid() -> opacity
    std::array<Vec3, kShCoeffCount> sh{}; // sh[k] = RGB coefficient k
};

struct ActivatedGaussian {
    Vec3 mean;
    Vec3 scale;     // strictly positive
    Quat rotation;  // unit norm
    double opacity = 0.0;
    std::array<Vec3, kShCoeffCount> sh{};
};

struct GaussianCloud {
    std::vector<Gaussian3D> gaussians;
    int sh_degree = 3;

    std::size_t size() const { return gaussians.size(); }
    bool empty() const { return gaussians.empty(); }
};

// Pinhole camera, OpenCV axes: x right, y down, z forward.
struct CameraModel {
    int width = 0;
    int height = 0;
    double fx = 0.0, fy = 0.0;
    double cx = 0.0, cy = 0.0;
    Mat3 rotation_w2c = Mat3::identity();
    Vec3 translation_w2c;

    Vec3 world_to_camera(const Vec3& p) const {
        return rotation_w2c * p + translation_w2c;
    }
    Vec3 camera_center_world() const {
        return -(rotation_w2c.transposed() * translation_w2c);
    }
    // Optical axis (z) direction in world coordinates.
    Vec3 optical_axis_world() const { return rotation_w2c.row(2); }

    // Same field of view at a different resolution.
    CameraModel scaled(double s) const;

    // Throws InvalidCamera when intrinsics or the rotation are unusable.
    void validate() const;
};

struct TrainingCameraSet {
    std::vector<CameraModel> cameras;
    int train_width = 0;
    int train_height = 0;

    bool empty() const { return cameras.empty(); }
};

enum class FilterMode { None, FixedDilation, ScaleAdaptive };
enum class BlendMode { PointSample, SuperSample, Integrate };

struct RenderSettings {
    FilterMode filter_mode = FilterMode::ScaleAdaptive;
    BlendMode blend_mode = BlendMode::PointSample;
    int ss_grid = 3;            // S: sub-pixel grid is S x S
    double sigma_l = 0.3;       // low-pass variance added per filter
    int tile_size = 16;         // pixels
    double cutoff_sigmas = 3.0; // binning radius in units of sqrt(lambda_long)
    double alpha_min = 1.0 / 255.0;
    double alpha_max = 0.99;
    double t_min = 1e-4;        // transmittance early-out
    Rgb background;

    void validate() const;  // throws Error on out-of-range values
};

// Row-major RGB, channels in [0,1] once finalized.
struct ImageBuffer {
    int width = 0;
    int height = 0;
    std::vector<float> pixels;  // 3 * width * height

    ImageBuffer() = default;
    ImageBuffer(int w, int h) : width(w), height(h), pixels(3u * w * h, 0.0f) {}

    float* at(int x, int y) { return pixels.data() + 3 * (std::size_t(y) * width + x); }
    const float* at(int x, int y) const {
        return pixels.data() + 3 * (std::size_t(y) * width + x);
    }
    void set(int x, int y, const Rgb& c) {
        float* p = at(x, y);
        p[0] = float(c.r);
        p[1] = float(c.g);
        p[2] = float(c.b);
    }
    Rgb get(int x, int y) const {
        const float* p = at(x, y);
        return {p[0], p[1], p[2]};
    }
};

// Checkpoint activation. Throws NonFinite when any activated value is NaN/Inf
// (including a zero-norm rotation).
ActivatedGaussian activate(const Gaussian3D& g);

// Sigma = R diag(scale^2) R^T. Symmetric PSD by construction.
Mat3 covariance3d(const Vec3& scale, const Quat& rotation);

}  // namespace splataa
