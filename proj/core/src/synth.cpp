#include "splataa/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "splataa/errors.hpp"

namespace splataa {

namespace {

constexpr double kOpacityLogit = 2.9444389791664403;  // sigmoid -> 0.95

double inv_sh_dc(double channel) {
    // invert eval_sh at degree 0: color = clamp(0.282095 * dc + 0.5)
    return (channel - 0.5) / 0.28209479177387814;
}

Gaussian3D make_gaussian(const Vec3& pos, double sigma_world, const Rgb& color) {
    Gaussian3D g;
    g.mean = pos;
    const double ls = std::log(sigma_world);
    g.log_scale = {ls, ls, ls};
    g.rotation = {1.0, 0.0, 0.0, 0.0};
    g.opacity_logit = kOpacityLogit;
    g.sh[0] = {inv_sh_dc(color.r), inv_sh_dc(color.g), inv_sh_dc(color.b)};
    return g;
}

}  // namespace

CameraModel look_at_camera(const Vec3& position, const Vec3& target, int width, int height,
                           double focal_px) {
    const Vec3 forward = (target - position).normalized();
    Vec3 right = forward.cross(Vec3{0.0, 1.0, 0.0});
    if (right.norm() < 1e-9) right = {1.0, 0.0, 0.0};  // looking along world y
    right = right.normalized();
    const Vec3 down = forward.cross(right);

    CameraModel cam;
    cam.width = width;
    cam.height = height;
    cam.fx = cam.fy = focal_px;
    cam.cx = width / 2.0;
    cam.cy = height / 2.0;
    cam.rotation_w2c = Mat3::from_rows(right, down, forward);
    cam.translation_w2c = -(cam.rotation_w2c * position);
    return cam;
}

SynthScene build_scene(const SceneRecipe& recipe) {
    if (!(recipe.extent > 0.0)) throw InvalidRecipe("scene extent must be positive");

    SynthScene scene;
    scene.cloud.sh_degree = 0;

    const double e = recipe.extent;
    std::mt19937_64 rng(recipe.seed);

    if (const auto* wall = std::get_if<CheckerWall>(&recipe.kind)) {
        if (wall->rows < 1 || wall->cols < 1 || !(wall->gaussian_sigma_world > 0.0) ||
            !(wall->spacing > 0.0))
            throw InvalidRecipe("checker wall parameters must be positive");
        for (int r = 0; r < wall->rows; ++r)
            for (int c = 0; c < wall->cols; ++c) {
                const Vec3 pos{(c - (wall->cols - 1) / 2.0) * wall->spacing * e,
                               (r - (wall->rows - 1) / 2.0) * wall->spacing * e, 0.0};
                const Rgb color = ((r + c) % 2 == 0) ? wall->color_a : wall->color_b;
                scene.cloud.gaussians.push_back(
                    make_gaussian(pos, wall->gaussian_sigma_world * e, color));
            }
    } else if (const auto* single = std::get_if<SingleSplat>(&recipe.kind)) {
        if (!(single->sigma_world > 0.0)) throw InvalidRecipe("splat sigma must be positive");
        scene.cloud.gaussians.push_back(
            make_gaussian({0.0, 0.0, 0.0}, single->sigma_world * e, single->color));
    } else if (const auto* star = std::get_if<StarBurst>(&recipe.kind)) {
        if (star->n_arms < 1 || !(star->falloff > 0.0) || !(star->falloff < 1.0))
            throw InvalidRecipe("starburst needs n_arms >= 1 and falloff in (0,1)");
        std::uniform_real_distribution<double> jitter(0.0, 2.0 * std::numbers::pi);
        const double phase = jitter(rng);
        for (int arm = 0; arm < star->n_arms; ++arm) {
            const double ang = phase + 2.0 * std::numbers::pi * arm / star->n_arms;
            double radius = 0.1 * e;
            double sigma = 0.03 * e;
            const Rgb color{0.5 + 0.5 * std::cos(ang), 0.7, 0.5 + 0.5 * std::sin(ang)};
            for (int k = 0; k < 8; ++k) {
                const Vec3 pos{radius * std::cos(ang), radius * std::sin(ang), 0.0};
                scene.cloud.gaussians.push_back(make_gaussian(pos, sigma, color));
                radius += 4.0 * sigma;
                sigma *= star->falloff;
            }
        }
    }

    // training ring: frontal camera first, then a circle around the +z axis
    const double dist = kSynthCameraDistance * e;
    const double ring_radius = 0.6 * e;
    const int res = kSynthTrainResolution;
    scene.cameras.train_width = res;
    scene.cameras.train_height = res;
    scene.cameras.cameras.push_back(
        look_at_camera({0.0, 0.0, dist}, {0.0, 0.0, 0.0}, res, res, kSynthFocalPx));
    for (int k = 0; k < kSynthRingCameras; ++k) {
        const double a = 2.0 * std::numbers::pi * k / kSynthRingCameras;
        const Vec3 pos{ring_radius * std::cos(a), ring_radius * std::sin(a), dist};
        scene.cameras.cameras.push_back(
            look_at_camera(pos, {0.0, 0.0, 0.0}, res, res, kSynthFocalPx));
    }
    return scene;
}

}  // namespace splataa
