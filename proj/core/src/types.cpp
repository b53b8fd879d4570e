#include "splataa/types.hpp"

#include <cmath>

#include "splataa/errors.hpp"

namespace splataa {

CameraModel CameraModel::scaled(double s) const {
    CameraModel c = *this;
    c.width = int(std::lround(width * s));
    c.height = int(std::lround(height * s));
    c.fx = fx * s;
    c.fy = fy * s;
    c.cx = cx * s;
    c.cy = cy * s;
    return c;
}

void CameraModel::validate() const {
    if (width < 1 || height < 1) throw InvalidCamera("camera dimensions must be >= 1");
    if (!(fx > 0.0) || !(fy > 0.0)) throw InvalidCamera("focal lengths must be positive");
    if (!rotation_w2c.finite() || !translation_w2c.finite() || !std::isfinite(cx) ||
        !std::isfinite(cy))
        throw InvalidCamera("camera contains non-finite values");
    // R R^T = I within 1e-6
    const Mat3 rrt = rotation_w2c * rotation_w2c.transposed();
    const Mat3 id = Mat3::identity();
    for (int i = 0; i < 9; ++i)
        if (std::abs(rrt.m[i] - id.m[i]) > 1e-6)
            throw InvalidCamera("rotation_w2c is not orthonormal");
}

void RenderSettings::validate() const {
    if (ss_grid < 1) throw Error("ss_grid must be >= 1");
    if (!(alpha_max > 0.0 && alpha_max < 1.0)) throw Error("alpha_max must be in (0,1)");
    if (sigma_l < 0.0) throw Error("sigma_l must be >= 0");
    if (tile_size < 1) throw Error("tile_size must be >= 1");
    if (!(cutoff_sigmas > 0.0)) throw Error("cutoff_sigmas must be positive");
}

ActivatedGaussian activate(const Gaussian3D& g) {
    ActivatedGaussian a;
    a.mean = g.mean;
    a.scale = {std::exp(g.log_scale.x), std::exp(g.log_scale.y), std::exp(g.log_scale.z)};
    a.rotation = g.rotation.normalized();
    a.opacity = sigmoid(g.opacity_logit);
    a.sh = g.sh;

    if (!a.mean.finite() || !a.scale.finite() || !a.rotation.finite() ||
        !std::isfinite(a.opacity))
        throw NonFinite("gaussian activation produced a non-finite value");
    for (const Vec3& c : a.sh)
        if (!c.finite()) throw NonFinite("gaussian SH coefficients are non-finite");
    return a;
}

Mat3 covariance3d(const Vec3& scale, const Quat& rotation) {
    const Mat3 r = rotation.to_rotation();
    const Mat3 d = Mat3::diagonal(scale.x * scale.x, scale.y * scale.y, scale.z * scale.z);
    Mat3 sigma = r * d * r.transposed();
    // enforce exact symmetry against fp drift
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            const double s = 0.5 * (sigma(i, j) + sigma(j, i));
            sigma(i, j) = s;
            sigma(j, i) = s;
        }
    if (!sigma.finite()) throw NonFinite("covariance3d produced a non-finite matrix");
    return sigma;
}

}  // namespace splataa
