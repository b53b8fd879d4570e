#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "splataa/types.hpp"

namespace splataa {

struct ManifestCamera {
    std::string id;
    CameraModel camera;
};

// JSON registry of training and render cameras; the schema is documented in
// the README.
struct CameraManifest {
    int train_width = 0;
    int train_height = 0;
    std::vector<ManifestCamera> training_cameras;
    std::vector<ManifestCamera> render_cameras;

    TrainingCameraSet training_set() const;
    // Searches render cameras first, then training cameras. Throws
    // InvalidCamera when the id is unknown.
    const CameraModel& find(const std::string& id) const;
};

CameraManifest load_camera_manifest(const std::filesystem::path& path);
void save_camera_manifest(const CameraManifest& manifest, const std::filesystem::path& path);

}  // namespace splataa
