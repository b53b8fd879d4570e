#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "splataa/errors.hpp"
#include "splataa/filters.hpp"
#include "splataa/synth.hpp"
#include "test_util.hpp"

using namespace splataa;
using test::make_splat;

TEST(FixedDilation, IdentityCovariance) {
    const Splat2D out = fixed_dilation(make_splat({0, 0}, Mat2::identity()), 0.3);
    EXPECT_NEAR(out.cov_px.m00, 1.3, 1e-12);
    EXPECT_NEAR(out.cov_px.m11, 1.3, 1e-12);
    EXPECT_NEAR(out.comp_factor, std::sqrt(1.0 / 1.69), 1e-12);
    EXPECT_NEAR(out.comp_factor, 0.7692307692307693, 1e-12);
}

TEST(FixedDilation, ZeroSigmaIsIdentity) {
    const Splat2D in = make_splat({1, 2}, Mat2{2.0, 0.5, 0.5, 1.0});
    const Splat2D out = fixed_dilation(in, 0.0);
    EXPECT_DOUBLE_EQ(out.cov_px.m00, in.cov_px.m00);
    EXPECT_DOUBLE_EQ(out.cov_px.m01, in.cov_px.m01);
    EXPECT_DOUBLE_EQ(out.comp_factor, 1.0);
}

TEST(FixedDilation, EigenvaluesShiftExactly) {
    const Splat2D in = make_splat({0, 0}, Mat2{3.0, 1.0, 1.0, 2.0});
    const Splat2D out = fixed_dilation(in, 0.3);
    EXPECT_NEAR(out.lambda_long, in.lambda_long + 0.3, 1e-12);
    EXPECT_NEAR(out.lambda_short, in.lambda_short + 0.3, 1e-12);
    EXPECT_DOUBLE_EQ(out.v_long.x, in.v_long.x);
    EXPECT_DOUBLE_EQ(out.mean_px.x, in.mean_px.x);
}

// the 1.64 px constant: a point-like splat gains a 3-sigma radius of
// 3 sqrt(0.3) from the fixed filter
TEST(FixedDilation, PointLikeDilationConstant) {
    const Splat2D in = make_splat({0, 0}, Mat2::diagonal(1e-16, 1e-16));
    const Splat2D out = fixed_dilation(in, 0.3);
    const double added = 3.0 * out.sigma_long() - 3.0 * in.sigma_long();
    EXPECT_NEAR(added, 3.0 * std::sqrt(0.3), 1e-6);
    EXPECT_NEAR(added, 1.6431676725154983, 1e-6);
}

TEST(SelectReferenceCamera, SingleCamera) {
    const SynthScene scene = build_scene({SingleSplat{}, 0, 1.0});
    TrainingCameraSet one;
    one.train_width = one.train_height = 256;
    one.cameras.push_back(scene.cameras.cameras[0]);
    EXPECT_EQ(select_reference_camera(scene.cameras.cameras[3], one), 0);
}

TEST(SelectReferenceCamera, PrefersAlignedAxis) {
    const CameraModel plus_z = look_at_camera({0, 0, 4}, {0, 0, 0}, 64, 64, 64);
    const CameraModel minus_z = look_at_camera({0, 0, -4}, {0, 0, 0}, 64, 64, 64);
    TrainingCameraSet train;
    train.train_width = train.train_height = 64;
    train.cameras = {minus_z, plus_z};
    // render camera shares +z orientation with index 1
    const CameraModel render_cam = look_at_camera({0.1, 0, 4}, {0.1, 0, 0}, 64, 64, 64);
    EXPECT_EQ(select_reference_camera(render_cam, train), 1);
}

TEST(SelectReferenceCamera, TieBreakByDistanceThenIndex) {
    const CameraModel near = look_at_camera({0, 0, 5}, {0, 0, 1}, 64, 64, 64);
    const CameraModel far = look_at_camera({0, 0, 6}, {0, 0, 2}, 64, 64, 64);
    TrainingCameraSet train;
    train.train_width = train.train_height = 64;
    train.cameras = {far, near};

    const CameraModel render_cam = look_at_camera({0, 0, 4}, {0, 0, 0}, 64, 64, 64);
    EXPECT_EQ(select_reference_camera(render_cam, train), 1);  // nearer center wins

    train.cameras = {near, near};
    EXPECT_EQ(select_reference_camera(render_cam, train), 0);  // lowest index wins
}

TEST(ComputeScaleRatio, IdentityCameraGivesUnity) {
    const SynthScene scene = build_scene({SingleSplat{}, 0, 1.0});
    const CameraModel& cam = scene.cameras.cameras[0];
    const ScaleRatio s = compute_scale_ratio(cam, scene.cameras, 4.0, 4.0);
    EXPECT_NEAR(s.r, 1.0, 1e-12);
    EXPECT_NEAR(s.delta_Rp, 1.0, 1e-12);
    EXPECT_NEAR(s.delta_Dc, 1.0, 1e-12);
    EXPECT_EQ(s.reference_camera_index, 0);
}

TEST(ComputeScaleRatio, HalfResolution) {
    const SynthScene scene = build_scene({SingleSplat{}, 0, 1.0});
    const CameraModel half = scene.cameras.cameras[0].scaled(0.5);
    const ScaleRatio s = compute_scale_ratio(half, scene.cameras, 4.0, 4.0);
    EXPECT_NEAR(s.delta_Rp, 0.5, 1e-12);
    EXPECT_NEAR(s.delta_Dc, 1.0, 1e-12);
    EXPECT_NEAR(s.r, 0.5, 1e-12);
}

// footprint oracle: moving the camera to half distance doubles the projected
// 3-sigma footprint, and sigma_l r^2 keeps (added blur)/footprint^2 constant
TEST(ComputeScaleRatio, HalfDistanceDoublesRatio) {
    const SynthScene scene = build_scene({SingleSplat{}, 0, 1.0});
    const CameraModel& train_cam = scene.cameras.cameras[0];
    const CameraModel near_cam = look_at_camera({0, 0, 2.0}, {0, 0, 0}, 256, 256, 256.0);

    const ScaleRatio s = compute_scale_ratio(near_cam, scene.cameras, 2.0, 4.0);
    EXPECT_NEAR(s.delta_Dc, 0.5, 1e-12);
    EXPECT_NEAR(s.r, 2.0, 1e-12);

    const ActivatedGaussian g = activate(scene.cloud.gaussians[0]);
    const auto at_train = project(g, train_cam);
    const auto at_near = project(g, near_cam);
    ASSERT_TRUE(at_train && at_near);
    const double footprint_ratio = at_near->sigma_long() / at_train->sigma_long();
    EXPECT_NEAR(footprint_ratio, 2.0, 1e-9);

    // blur/footprint^2 is scale free: sigma_l r^2 / lambda == sigma_l / lambda_train
    const double rel_train = 0.3 / at_train->lambda_long;
    const double rel_near = 0.3 * s.r * s.r / at_near->lambda_long;
    EXPECT_NEAR(rel_near, rel_train, 1e-9 * rel_train);
}

TEST(ComputeScaleRatio, NonPositiveDepthThrows) {
    const SynthScene scene = build_scene({SingleSplat{}, 0, 1.0});
    EXPECT_THROW(compute_scale_ratio(scene.cameras.cameras[0], scene.cameras, -1.0, 4.0),
                 DegenerateDepth);
    EXPECT_THROW(compute_scale_ratio(scene.cameras.cameras[0], scene.cameras, 4.0, 0.0),
                 DegenerateDepth);
}

TEST(ScaleAdaptive, UnitRatioEqualsFixedDilation) {
    const Splat2D in = make_splat({0, 0}, Mat2{2.0, 0.7, 0.7, 1.5});
    ScaleRatio unit;
    const Splat2D a = scale_adaptive(in, 0.3, unit);
    const Splat2D b = fixed_dilation(in, 0.3);
    EXPECT_DOUBLE_EQ(a.cov_px.m00, b.cov_px.m00);
    EXPECT_DOUBLE_EQ(a.cov_px.m01, b.cov_px.m01);
    EXPECT_DOUBLE_EQ(a.comp_factor, b.comp_factor);
}

TEST(ScaleAdaptive, RatioTwoOnIdentity) {
    ScaleRatio two;
    two.r = 2.0;
    const Splat2D out = scale_adaptive(make_splat({0, 0}, Mat2::identity()), 0.3, two);
    EXPECT_NEAR(out.cov_px.m00, 2.2, 1e-12);
    EXPECT_NEAR(out.cov_px.m11, 2.2, 1e-12);
}

// 3 sqrt(0.3 * 0.25): the added radius shrinks with the ratio
TEST(ScaleAdaptive, HalfRatioRadius) {
    ScaleRatio half;
    half.r = 0.5;
    const Splat2D in = make_splat({0, 0}, Mat2::diagonal(1e-16, 1e-16));
    const Splat2D out = scale_adaptive(in, 0.3, half);
    const double added = 3.0 * out.sigma_long() - 3.0 * in.sigma_long();
    EXPECT_NEAR(added, 3.0 * std::sqrt(0.3 * 0.25), 1e-6);
    EXPECT_NEAR(added, 0.8215838362577492, 1e-6);
}

TEST(ScaleAdaptive, EigenvaluesMonotoneInRatio) {
    const Splat2D in = make_splat({0, 0}, Mat2{1.5, 0.4, 0.4, 0.8});
    double prev_long = 0.0, prev_short = 0.0;
    for (double r : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
        ScaleRatio ratio;
        ratio.r = r;
        const Splat2D out = scale_adaptive(in, 0.3, ratio);
        EXPECT_GT(out.lambda_long, prev_long);
        EXPECT_GT(out.lambda_short, prev_short);
        prev_long = out.lambda_long;
        prev_short = out.lambda_short;
    }
}

// filtering preserves total splat mass: comp * sqrt(|cov'|) == sqrt(|cov|)
TEST(Filters, CompFactorPreservesMass) {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const double a = std::exp(2.0 * u(rng)), c = std::exp(2.0 * u(rng));
        const double b = u(rng) * 0.9 * std::sqrt(a * c);
        const Splat2D in = make_splat({0, 0}, Mat2{a, b, b, c});
        ScaleRatio ratio;
        ratio.r = std::exp(u(rng));
        const Splat2D out = scale_adaptive(in, 0.3, ratio);
        const double mass_before = 2.0 * std::numbers::pi * std::sqrt(in.cov_px.det());
        const double mass_after =
            2.0 * std::numbers::pi * out.comp_factor * std::sqrt(out.cov_px.det());
        EXPECT_NEAR(mass_after / mass_before, 1.0, 1e-9);
        EXPECT_GT(out.comp_factor, 0.0);
        EXPECT_LE(out.comp_factor, 1.0);
    }
}

// covariance-level scale consistency: halving the resolution quarters the
// adaptive filtered covariance exactly, while the fixed filter does not
TEST(Filters, CovarianceScaleConsistency) {
    const double lambda_full = 0.16;  // sub-pixel at half resolution
    const Splat2D full = make_splat({0, 0}, Mat2::diagonal(lambda_full, lambda_full));
    const Splat2D half = make_splat({0, 0}, Mat2::diagonal(lambda_full / 4, lambda_full / 4));

    ScaleRatio r_full, r_half;
    r_half.r = 0.5;
    const double sa_ratio = std::sqrt(scale_adaptive(half, 0.3, r_half).lambda_long /
                                      scale_adaptive(full, 0.3, r_full).lambda_long);
    EXPECT_NEAR(sa_ratio, 0.5, 1e-12);

    const double fd_ratio = std::sqrt(fixed_dilation(half, 0.3).lambda_long /
                                      fixed_dilation(full, 0.3).lambda_long);
    EXPECT_GT(std::abs(fd_ratio - 0.5), 0.05 * 0.5);
}
