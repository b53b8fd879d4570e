#pragma once

#include <cstdint>
#include <variant>

#include "splataa/types.hpp"

namespace splataa {

// Wall of gaussians in the z = 0 plane with alternating colors. Defaults give
// a ~1.3 px sigma at the training cameras (3-sigma footprint ~4 px, sub-pixel
// at 1/8 resolution) with neighbors 3 sigma apart, so splats overlap and
// occlusion order matters.
struct CheckerWall {
    int rows = 24;
    int cols = 24;
    double gaussian_sigma_world = 0.0208;
    double spacing = 0.0625;
    Rgb color_a{0.92, 0.92, 0.92};
    Rgb color_b{0.08, 0.08, 0.08};
};

struct SingleSplat {
    double sigma_world = 0.0625;
    Rgb color{1.0, 1.0, 1.0};
};

// Arms of gaussians radiating from the origin, scales shrinking outward.
struct StarBurst {
    int n_arms = 7;
    double falloff = 0.8;
};

struct SceneRecipe {
    std::variant<CheckerWall, SingleSplat, StarBurst> kind = CheckerWall{};
    std::uint64_t seed = 0;
    double extent = 1.0;  // world half-width of the scene
};

struct SynthScene {
    GaussianCloud cloud;
    TrainingCameraSet cameras;
};

// Camera ring constants shared by every recipe: index 0 is the frontal camera
// on the +z axis, the rest sit on a ring around it, all looking at the origin.
inline constexpr int kSynthRingCameras = 8;
inline constexpr double kSynthCameraDistance = 4.0;
inline constexpr int kSynthTrainResolution = 256;
inline constexpr double kSynthFocalPx = 256.0;

// Deterministic in the recipe (including seed).
SynthScene build_scene(const SceneRecipe& recipe);

// Pinhole looking at `target` from `position`, y-down image axes.
CameraModel look_at_camera(const Vec3& position, const Vec3& target, int width, int height,
                           double focal_px);

}  // namespace splataa
