#include "splataa/projection.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "splataa/errors.hpp"

namespace splataa {

namespace {

// Total decomposition: clamps eigenvalues to >= 0 instead of throwing, so the
// projection path can handle paper-thin splats (the filter stage lifts them).
EigenDecomposition2x2 decompose(const Mat2& cov) {
    EigenDecomposition2x2 e;
    const double a = cov.m00, b = 0.5 * (cov.m01 + cov.m10), c = cov.m11;
    const double tr = a + c;
    const double disc = std::sqrt(std::max(0.0, (a - c) * (a - c) + 4.0 * b * b));
    e.lambda_long = std::max(0.0, 0.5 * (tr + disc));
    e.lambda_short = std::max(0.0, 0.5 * (tr - disc));

    if (disc <= 1e-12 * std::max(std::abs(tr), 1e-300)) {
        // isotropic tie-break: deterministic axes
        e.v_long = {1.0, 0.0};
        e.v_short = {0.0, 1.0};
        e.theta = 0.0;
        return e;
    }

    // eigenvector of lambda_long; pick the better-conditioned column
    Vec2 v{b, e.lambda_long - a};
    Vec2 alt{e.lambda_long - c, b};
    if (alt.dot(alt) > v.dot(v)) v = alt;
    e.v_long = v.normalized();
    e.v_short = e.v_long.perp();

    if (e.v_long.x == 0.0) {
        e.theta = 0.0;  // vertical long axis is the axis-swapped aligned case
    } else {
        e.theta = std::atan2(std::abs(e.v_long.y), std::abs(e.v_long.x));
    }
    return e;
}

}  // namespace

void Splat2D::refresh_derived() {
    const EigenDecomposition2x2 e = decompose(cov_px);
    lambda_long = e.lambda_long;
    lambda_short = e.lambda_short;
    v_long = e.v_long;
    v_short = e.v_short;
    theta = e.theta;
    const double d = cov_px.det();
    inv_cov = d > 0.0 ? cov_px.inverse() : Mat2{};
}

EigenDecomposition2x2 eigen2x2(const Mat2& cov) {
    if (!cov.finite()) throw NonFinite("eigen2x2: non-finite covariance");
    EigenDecomposition2x2 e = decompose(cov);
    if (e.lambda_short <= 0.0)
        throw Degenerate("eigen2x2: covariance is not positive definite");
    return e;
}

std::optional<Splat2D> project(const ActivatedGaussian& g, const CameraModel& cam,
                               double cutoff_sigmas) {
    const Vec3 t = cam.world_to_camera(g.mean);
    if (t.z <= kNearPlane) return std::nullopt;

    const Vec2 mean_px{cam.fx * t.x / t.z + cam.cx, cam.fy * t.y / t.z + cam.cy};

    // Local affine Jacobian with the tangent-plane clamp of the reference
    // rasterizer (1.3x the frustum half-tangent).
    const double lim_x = 1.3 * (cam.width / (2.0 * cam.fx));
    const double lim_y = 1.3 * (cam.height / (2.0 * cam.fy));
    const double tx = std::clamp(t.x / t.z, -lim_x, lim_x) * t.z;
    const double ty = std::clamp(t.y / t.z, -lim_y, lim_y) * t.z;

    // J is 2x3: [fx/z, 0, -fx x/z^2; 0, fy/z, -fy y/z^2]
    const double j00 = cam.fx / t.z;
    const double j02 = -cam.fx * tx / (t.z * t.z);
    const double j11 = cam.fy / t.z;
    const double j12 = -cam.fy * ty / (t.z * t.z);

    const Mat3& w = cam.rotation_w2c;
    // T = J W, rows of the 2x3 product
    const Vec3 t0{j00 * w(0, 0) + j02 * w(2, 0), j00 * w(0, 1) + j02 * w(2, 1),
                  j00 * w(0, 2) + j02 * w(2, 2)};
    const Vec3 t1{j11 * w(1, 0) + j12 * w(2, 0), j11 * w(1, 1) + j12 * w(2, 1),
                  j11 * w(1, 2) + j12 * w(2, 2)};

    const Mat3 sigma = covariance3d(g.scale, g.rotation);
    const Vec3 s0 = sigma * t0;
    const Vec3 s1 = sigma * t1;
    Mat2 cov{t0.dot(s0), t0.dot(s1), t1.dot(s0), t1.dot(s1)};
    cov.m01 = cov.m10 = 0.5 * (cov.m01 + cov.m10);

    if (!cov.finite() || !std::isfinite(mean_px.x) || !std::isfinite(mean_px.y))
        return std::nullopt;

    Splat2D splat;
    splat.mean_px = mean_px;
    splat.cov_px = cov;
    splat.depth = t.z;
    splat.opacity = g.opacity;
    splat.comp_factor = 1.0;
    splat.refresh_derived();

    const double radius = cutoff_sigmas * splat.sigma_long();
    if (mean_px.x < -radius || mean_px.x > cam.width + radius || mean_px.y < -radius ||
        mean_px.y > cam.height + radius)
        return std::nullopt;

    return splat;
}

double cutoff_radius(const Splat2D& splat, double cutoff_sigmas) {
    return cutoff_sigmas * splat.sigma_long();
}

namespace {

constexpr double kSh0 = 0.28209479177387814;
constexpr double kSh1 = 0.4886025119029199;
constexpr double kSh2[5] = {1.0925484305920792, -1.0925484305920792, 0.31539156525252005,
                            -1.0925484305920792, 0.5462742152960396};
constexpr double kSh3[7] = {-0.5900435899266435, 2.890611442640554, -0.4570457994644658,
                            0.3731763325901154,  -0.4570457994644658, 1.445305721320277,
                            -0.5900435899266435};

}  // namespace

Rgb eval_sh(std::span<const Vec3> sh, const Vec3& view_dir, int degree) {
    Vec3 c = kSh0 * sh[0];
    if (degree >= 1) {
        const double x = view_dir.x, y = view_dir.y, z = view_dir.z;
        c = c - kSh1 * y * sh[1] + kSh1 * z * sh[2] - kSh1 * x * sh[3];
        if (degree >= 2) {
            const double xx = x * x, yy = y * y, zz = z * z;
            const double xy = x * y, yz = y * z, xz = x * z;
            c = c + kSh2[0] * xy * sh[4] + kSh2[1] * yz * sh[5] +
                kSh2[2] * (2.0 * zz - xx - yy) * sh[6] + kSh2[3] * xz * sh[7] +
                kSh2[4] * (xx - yy) * sh[8];
            if (degree >= 3) {
                c = c + kSh3[0] * y * (3.0 * xx - yy) * sh[9] + kSh3[1] * xy * z * sh[10] +
                    kSh3[2] * y * (4.0 * zz - xx - yy) * sh[11] +
                    kSh3[3] * z * (2.0 * zz - 3.0 * xx - 3.0 * yy) * sh[12] +
                    kSh3[4] * x * (4.0 * zz - xx - yy) * sh[13] +
                    kSh3[5] * z * (xx - yy) * sh[14] +
                    kSh3[6] * x * (xx - 3.0 * yy) * sh[15];
            }
        }
    }
    auto clamp01 = [](double v) { return std::clamp(v + 0.5, 0.0, 1.0); };
    return {clamp01(c.x), clamp01(c.y), clamp01(c.z)};
}

}  // namespace splataa
