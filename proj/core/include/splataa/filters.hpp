#pragma once

#include "splataa/projection.hpp"
#include "splataa/types.hpp"

namespace splataa {

// Render-vs-training sampling-rate ratio for one primitive.
// r = delta_Rp / delta_Dc, where delta_Rp is the resolution ratio and
// delta_Dc the (depth / normalized-focal) ratio against the reference
// training camera. r > 1 means the projected footprint is larger at render
// time than it was at training time.
struct ScaleRatio {
    double r = 1.0;
    double delta_Rp = 1.0;
    double delta_Dc = 1.0;
    int reference_camera_index = 0;
};

// cov' = cov + sigma_l * I, comp_factor scaled by sqrt(|cov| / |cov'|).
// Eigenvectors are unchanged; both eigenvalues grow by exactly sigma_l.
Splat2D fixed_dilation(Splat2D splat, double sigma_l);

// cov' = cov + sigma_l * r^2 * I. Reduces to fixed_dilation at r = 1.
Splat2D scale_adaptive(Splat2D splat, double sigma_l, const ScaleRatio& ratio);

// Most similarly orientated training camera: argmax of optical-axis cosine,
// ties broken by camera-center distance, then lowest index.
int select_reference_camera(const CameraModel& render_cam, const TrainingCameraSet& train);

// Builds the ratio from per-primitive depths in the render camera and in the
// selected reference training camera. Throws DegenerateDepth on depth <= 0.
ScaleRatio compute_scale_ratio(const CameraModel& render_cam, const TrainingCameraSet& train,
                               double gaussian_depth_render, double gaussian_depth_train);

// Variant with the reference camera already chosen (the renderer selects once
// per view and reuses it for every primitive).
ScaleRatio compute_scale_ratio(const CameraModel& render_cam, const TrainingCameraSet& train,
                               int reference_index, double gaussian_depth_render,
                               double gaussian_depth_train);

}  // namespace splataa
