#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "splataa/blending.hpp"
#include "splataa/errorlab.hpp"
#include "splataa/errors.hpp"
#include "test_util.hpp"

using namespace splataa;
using test::make_splat;

TEST(GaussianCdf, KnownValues) {
    EXPECT_DOUBLE_EQ(gaussian_cdf(0.0), 0.5);
    EXPECT_NEAR(gaussian_cdf(8.0), 1.0, 1e-7);
    EXPECT_NEAR(gaussian_cdf(1.0), 0.8413447460685429, 1e-9);
    EXPECT_NEAR(gaussian_cdf(-1.0), 1.0 - 0.8413447460685429, 1e-9);
}

// independent oracle: Simpson integration of the pdf
TEST(GaussianCdf, MatchesQuadratureOracle) {
    for (double t : {-3.0, -1.2, -0.3, 0.0, 0.4, 1.0, 2.7}) {
        EXPECT_NEAR(gaussian_cdf(t), test::cdf_oracle(t), 1e-9) << "t=" << t;
    }
}

TEST(AlphaPoint, PeakClampsAtAlphaMax) {
    const Splat2D s = make_splat({0, 0}, Mat2::identity(), 1.0);
    EXPECT_DOUBLE_EQ(alpha_point(s, {0, 0}), 0.99);
}

TEST(AlphaPoint, MahalanobisThree) {
    const double o = 0.8, comp = 0.9;
    const Splat2D s = make_splat({0, 0}, Mat2::identity(), o, comp);
    const double alpha = alpha_point(s, {3.0, 0.0});
    EXPECT_NEAR(alpha, o * comp * 0.011108996538242306, 1e-12);
}

// chains the filter example: sigma_l = 0.3 on identity cov scales the peak by
// sqrt(1/1.69)
TEST(AlphaPoint, FilteredPeakUsesCompFactor) {
    const double o = 0.7;
    const Splat2D s = make_splat({0, 0}, Mat2::diagonal(1.3, 1.3), o, std::sqrt(1.0 / 1.69));
    EXPECT_NEAR(alpha_point(s, {0, 0}), o * 0.7692307692307693, 1e-12);
}

TEST(AlphaPoint, SingularThrows) {
    Splat2D s = make_splat({0, 0}, Mat2::diagonal(1.0, 0.0));
    EXPECT_THROW(alpha_point(s, {0, 0}), SingularCovariance);
}

TEST(RotatedPixelBounds, AxisAlignedIsPixelBox) {
    const Splat2D s = make_splat({3.0, 2.0}, Mat2::diagonal(4.0, 1.0));
    const PixelBounds b = rotated_pixel_bounds({{3.5, 2.5}, 1.0}, s);
    EXPECT_NEAR(b.x_min, 0.0, 1e-12);
    EXPECT_NEAR(b.x_max, 1.0, 1e-12);
    EXPECT_NEAR(b.y_min, 0.0, 1e-12);
    EXPECT_NEAR(b.y_max, 1.0, 1e-12);
}

// oracle: corner arithmetic for a 45-degree splat. Corners shrink by 1/sqrt(2)
// and the sqrt(2) diagonal projects back to extent 1 on each eigen axis.
TEST(RotatedPixelBounds, DiagonalSplatKeepsUnitExtent) {
    const Mat2 cov{2.5, 1.5, 1.5, 2.5};  // theta = pi/4
    const Splat2D s = make_splat({0, 0}, cov);
    ASSERT_NEAR(s.theta, std::numbers::pi / 4.0, 1e-12);
    const PixelBounds b = rotated_pixel_bounds({{0, 0}, 1.0}, s);
    EXPECT_NEAR(b.x_max - b.x_min, 1.0, 1e-12);
    EXPECT_NEAR(b.y_max - b.y_min, 1.0, 1e-12);
    EXPECT_NEAR(b.x_min, -0.5, 1e-12);
    EXPECT_NEAR(b.y_max, 0.5, 1e-12);
}

TEST(RotatedPixelBounds, SideTwoCenteredOnMean) {
    const Splat2D s = make_splat({5.0, 5.0}, Mat2::diagonal(2.0, 1.0));
    const PixelBounds b = rotated_pixel_bounds({{5.0, 5.0}, 2.0}, s);
    EXPECT_NEAR(b.x_min, -1.0, 1e-12);
    EXPECT_NEAR(b.x_max, 1.0, 1e-12);
    EXPECT_NEAR(b.y_min, -1.0, 1e-12);
    EXPECT_NEAR(b.y_max, 1.0, 1e-12);
}

// the scaled construction keeps the box area equal to the pixel area
TEST(RotatedPixelBounds, AreaPreservedForAnyTheta) {
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> u(0.1, 3.0);
    std::uniform_real_distribution<double> ang(0.0, std::numbers::pi);
    for (int trial = 0; trial < 100; ++trial) {
        const double l1 = u(rng) + 1.0, l2 = u(rng) * 0.3;
        const double t = ang(rng);
        const Vec2 v{std::cos(t), std::sin(t)};
        const Mat2 cov{l1 * v.x * v.x + l2 * v.y * v.y, (l1 - l2) * v.x * v.y,
                       (l1 - l2) * v.x * v.y, l1 * v.y * v.y + l2 * v.x * v.x};
        const Splat2D s = make_splat({0, 0}, cov);
        const double side = 0.5 + u(rng);
        const PixelBounds b = rotated_pixel_bounds({{u(rng), u(rng)}, side}, s);
        EXPECT_NEAR((b.x_max - b.x_min) * (b.y_max - b.y_min), side * side, 1e-9);
    }
}

TEST(AlphaIntegrated, FlatGaussianApproachesPointAlpha) {
    const double sigma = 20.0;
    const Splat2D s = make_splat({0, 0}, Mat2::diagonal(sigma * sigma, sigma * sigma), 1.0);
    const double a = alpha_integrated(s, {{0, 0}, 1.0});
    EXPECT_NEAR(a, 0.99, 1e-3);  // M -> 1, clamped at alpha_max
}

// frozen from the closed form (2 Phi(1) - 1)^2 pi / 2 and cross-checked with
// the brute-force quadrature oracle below
TEST(AlphaIntegrated, HalfSigmaUnitPixel) {
    const Splat2D s = make_splat({0, 0}, Mat2::diagonal(0.25, 0.25), 1.0);
    const double a = alpha_integrated(s, {{0, 0}, 1.0});
    EXPECT_NEAR(a, 0.7320931000008094, 1e-9);

    const double quad = oracle_integral({{0, 0}, 1.0, 0.0}, 0.5, 0.5, 512);
    const double mass_to_mean = 2.0 * std::numbers::pi * 0.25;  // peak-1 mass / area
    EXPECT_NEAR(a, quad * mass_to_mean, 1e-7);
}

TEST(AlphaIntegrated, FarPixelIsNegligible) {
    const Splat2D s = make_splat({0, 0}, Mat2::identity(), 1.0);
    EXPECT_LT(alpha_integrated(s, {{10.0, 0}, 1.0}), 1e-20);
}

TEST(AlphaIntegrated, SingularThrows) {
    Splat2D s = make_splat({0, 0}, Mat2::diagonal(1.0, 0.0));
    EXPECT_THROW(alpha_integrated(s, {{0, 0}, 1.0}), SingularCovariance);
}

// v_long -> -v_long leaves every blending quantity unchanged
TEST(AlphaIntegrated, EigenvectorSignFlipInvariance) {
    const Mat2 cov{2.0, 0.9, 0.9, 1.1};
    Splat2D s = make_splat({0.3, -0.2}, cov, 0.8);
    const PixelRegion px{{1.1, 0.4}, 1.0};
    const double a = alpha_integrated(s, px);
    s.v_long = -s.v_long;
    s.v_short = -s.v_short;
    EXPECT_DOUBLE_EQ(alpha_integrated(s, px), a);
}

namespace {

RenderSettings settings_for(BlendMode mode, int ss_grid = 3) {
    RenderSettings s;
    s.blend_mode = mode;
    s.ss_grid = ss_grid;
    s.background = {0.1, 0.2, 0.3};
    return s;
}

}  // namespace

TEST(BlendTilePixel, EmptyListGivesBackground) {
    const RenderSettings s = settings_for(BlendMode::PointSample);
    const Rgb c = blend_tile_pixel({}, {{0.5, 0.5}, 1.0}, s);
    EXPECT_DOUBLE_EQ(c.r, 0.1);
    EXPECT_DOUBLE_EQ(c.g, 0.2);
    EXPECT_DOUBLE_EQ(c.b, 0.3);
}

TEST(BlendTilePixel, OpaqueSplatClampsToAlphaMax) {
    const RenderSettings s = settings_for(BlendMode::PointSample);
    Splat2D splat = make_splat({0.5, 0.5}, Mat2::identity(), 1.0);
    splat.color = {1.0, 0.0, 0.5};
    const Rgb c = blend_tile_pixel({&splat, 1}, {{0.5, 0.5}, 1.0}, s);
    EXPECT_NEAR(c.r, 0.99 * 1.0 + 0.01 * 0.1, 1e-12);
    EXPECT_NEAR(c.g, 0.99 * 0.0 + 0.01 * 0.2, 1e-12);
    EXPECT_NEAR(c.b, 0.99 * 0.5 + 0.01 * 0.3, 1e-12);
}

// limit-equivalence oracle: a dense sub-sample grid converges to the analytic
// integration value
TEST(BlendTilePixel, SuperSample64ApproachesIntegrate) {
    Splat2D splat = make_splat({0.7, 0.3}, Mat2::diagonal(2.25, 2.25), 0.8);
    splat.color = {1.0, 1.0, 1.0};

    const Rgb ss = blend_tile_pixel({&splat, 1}, {{0.5, 0.5}, 1.0},
                                    settings_for(BlendMode::SuperSample, 64));
    const Rgb in = blend_tile_pixel({&splat, 1}, {{0.5, 0.5}, 1.0},
                                    settings_for(BlendMode::Integrate));
    EXPECT_NEAR(ss.r / in.r, 1.0, 0.01);
}

TEST(BlendTilePixel, SuperSampleGridOneEqualsPointSample) {
    std::mt19937 rng(55);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Splat2D> splats;
        for (int i = 0; i < 4; ++i) {
            Splat2D s = make_splat({u(rng), u(rng)}, Mat2::diagonal(1.0 + u(rng) * 0.4, 1.2),
                                   0.5 + 0.1 * i, 1.0, double(i));
            s.color = {0.2 * i, 0.5, 1.0 - 0.2 * i};
            splats.push_back(s);
        }
        const PixelRegion px{{u(rng), u(rng)}, 1.0};
        const Rgb a = blend_tile_pixel(splats, px, settings_for(BlendMode::PointSample));
        const Rgb b = blend_tile_pixel(splats, px, settings_for(BlendMode::SuperSample, 1));
        EXPECT_DOUBLE_EQ(a.r, b.r);
        EXPECT_DOUBLE_EQ(a.g, b.g);
        EXPECT_DOUBLE_EQ(a.b, b.b);
    }
}

TEST(SubPixelState, TransmittanceMonotoneAndBounded) {
    SubPixelState state(4);
    std::mt19937 rng(66);
    std::uniform_real_distribution<double> u(0.0, 0.99);
    for (int step = 0; step < 200; ++step) {
        const int i = step % 4;
        const double before = state.transmittance[i];
        state.accumulate(i, u(rng), {0.5, 0.5, 0.5});
        EXPECT_LE(state.transmittance[i], before);
        EXPECT_GE(state.transmittance[i], 0.0);
        EXPECT_LE(state.transmittance[i], 1.0);
    }
}

// splats below alpha_min contribute nothing, so permuting equal-depth ones
// cannot change the output
TEST(BlendTilePixel, SubThresholdSplatsArePermutationInvariant) {
    Splat2D visible = make_splat({0.5, 0.5}, Mat2::identity(), 0.7, 1.0, 1.0);
    visible.color = {0.9, 0.4, 0.1};
    Splat2D faint_a = make_splat({0.5, 0.5}, Mat2::identity(), 0.002, 1.0, 1.0);
    faint_a.color = {1.0, 0.0, 0.0};
    Splat2D faint_b = make_splat({0.6, 0.4}, Mat2::identity(), 0.003, 1.0, 1.0);
    faint_b.color = {0.0, 1.0, 0.0};

    const PixelRegion px{{0.5, 0.5}, 1.0};
    for (BlendMode mode :
         {BlendMode::PointSample, BlendMode::SuperSample, BlendMode::Integrate}) {
        const RenderSettings s = settings_for(mode);
        const std::vector<Splat2D> order1{faint_a, faint_b, visible};
        const std::vector<Splat2D> order2{faint_b, faint_a, visible};
        const Rgb c1 = blend_tile_pixel(order1, px, s);
        const Rgb c2 = blend_tile_pixel(order2, px, s);
        EXPECT_DOUBLE_EQ(c1.r, c2.r);
        EXPECT_DOUBLE_EQ(c1.g, c2.g);
        EXPECT_DOUBLE_EQ(c1.b, c2.b);
    }
}

TEST(BlendTilePixel, OutputStaysInUnitRange) {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Splat2D> splats;
        for (int i = 0; i < 6; ++i) {
            Splat2D s = make_splat({u(rng) * 2, u(rng) * 2},
                                   Mat2::diagonal(0.5 + u(rng), 0.5 + u(rng)), u(rng), 1.0,
                                   double(i) * 0.5);
            s.color = {u(rng), u(rng), u(rng)};
            splats.push_back(s);
        }
        for (BlendMode mode :
             {BlendMode::PointSample, BlendMode::SuperSample, BlendMode::Integrate}) {
            const Rgb c = blend_tile_pixel(splats, {{1.0, 1.0}, 1.0}, settings_for(mode));
            for (double v : {c.r, c.g, c.b}) {
                EXPECT_GE(v, 0.0);
                EXPECT_LE(v, 1.0 + 1e-12);
            }
        }
    }
}
