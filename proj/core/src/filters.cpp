#include "splataa/filters.hpp"

#include <cmath>

#include "splataa/errors.hpp"

namespace splataa {

namespace {

Splat2D dilate(Splat2D splat, double added_variance) {
    const double det_before = std::max(0.0, splat.cov_px.det());
    splat.cov_px.m00 += added_variance;
    splat.cov_px.m11 += added_variance;
    const double det_after = splat.cov_px.det();

    // Eigenvectors are preserved by + sigma*I; eigenvalues shift exactly.
    splat.lambda_long += added_variance;
    splat.lambda_short += added_variance;
    splat.inv_cov = det_after > 0.0 ? splat.cov_px.inverse() : Mat2{};

    if (det_after > 0.0) splat.comp_factor *= std::sqrt(det_before / det_after);
    return splat;
}

}  // namespace

Splat2D fixed_dilation(Splat2D splat, double sigma_l) {
    return dilate(std::move(splat), sigma_l);
}

Splat2D scale_adaptive(Splat2D splat, double sigma_l, const ScaleRatio& ratio) {
    return dilate(std::move(splat), sigma_l * ratio.r * ratio.r);
}

int select_reference_camera(const CameraModel& render_cam, const TrainingCameraSet& train) {
    if (train.empty())
        throw MissingTrainingCameras("reference selection requires training cameras");

    const Vec3 axis = render_cam.optical_axis_world();
    const Vec3 center = render_cam.camera_center_world();

    int best = 0;
    double best_cos = -2.0;
    double best_dist = 0.0;
    for (int i = 0; i < int(train.cameras.size()); ++i) {
        const CameraModel& cam = train.cameras[i];
        const double cos_sim = axis.dot(cam.optical_axis_world());
        const double dist = (cam.camera_center_world() - center).norm();
        if (cos_sim > best_cos || (cos_sim == best_cos && dist < best_dist)) {
            best = i;
            best_cos = cos_sim;
            best_dist = dist;
        }
    }
    return best;
}

ScaleRatio compute_scale_ratio(const CameraModel& render_cam, const TrainingCameraSet& train,
                               double gaussian_depth_render, double gaussian_depth_train) {
    const int idx = select_reference_camera(render_cam, train);
    return compute_scale_ratio(render_cam, train, idx, gaussian_depth_render,
                               gaussian_depth_train);
}

ScaleRatio compute_scale_ratio(const CameraModel& render_cam, const TrainingCameraSet& train,
                               int reference_index, double gaussian_depth_render,
                               double gaussian_depth_train) {
    if (gaussian_depth_render <= 0.0 || gaussian_depth_train <= 0.0)
        throw DegenerateDepth("scale ratio requires positive depths");

    const CameraModel& ref = train.cameras.at(reference_index);

    ScaleRatio s;
    s.reference_camera_index = reference_index;

    // Width ratio; sqrt of the area ratio when aspect ratios differ.
    const double aspect_render = double(render_cam.width) / render_cam.height;
    const double aspect_train = double(train.train_width) / train.train_height;
    if (std::abs(aspect_render - aspect_train) < 1e-9) {
        s.delta_Rp = double(render_cam.width) / train.train_width;
    } else {
        s.delta_Rp = std::sqrt(double(render_cam.width) * render_cam.height /
                               (double(train.train_width) * train.train_height));
    }

    // Depth over width-normalized focal, so the ratio is resolution independent.
    const double f_render = render_cam.fx / render_cam.width;
    const double f_train = ref.fx / ref.width;
    s.delta_Dc = (gaussian_depth_render / f_render) / (gaussian_depth_train / f_train);

    s.r = s.delta_Rp / s.delta_Dc;
    return s;
}

}  // namespace splataa
