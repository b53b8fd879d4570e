#include "splataa/camera_manifest.hpp"

#include <fstream>

#include <json.hpp>

#include "splataa/errors.hpp"

namespace splataa {

namespace {

using nlohmann::json;

json camera_to_json(const ManifestCamera& mc) {
    const CameraModel& c = mc.camera;
    json j;
    j["id"] = mc.id;
    j["width"] = c.width;
    j["height"] = c.height;
    j["fx"] = c.fx;
    j["fy"] = c.fy;
    j["cx"] = c.cx;
    j["cy"] = c.cy;
    j["rotation_w2c"] = c.rotation_w2c.m;
    j["translation_w2c"] = {c.translation_w2c.x, c.translation_w2c.y, c.translation_w2c.z};
    return j;
}

ManifestCamera camera_from_json(const json& j) {
    ManifestCamera mc;
    mc.id = j.at("id").get<std::string>();
    CameraModel& c = mc.camera;
    c.width = j.at("width").get<int>();
    c.height = j.at("height").get<int>();
    c.fx = j.at("fx").get<double>();
    c.fy = j.at("fy").get<double>();
    c.cx = j.at("cx").get<double>();
    c.cy = j.at("cy").get<double>();
    const auto rot = j.at("rotation_w2c").get<std::array<double, 9>>();
    c.rotation_w2c.m = rot;
    const auto t = j.at("translation_w2c").get<std::array<double, 3>>();
    c.translation_w2c = {t[0], t[1], t[2]};
    c.validate();
    return mc;
}

}  // namespace

TrainingCameraSet CameraManifest::training_set() const {
    TrainingCameraSet set;
    set.train_width = train_width;
    set.train_height = train_height;
    for (const ManifestCamera& mc : training_cameras) set.cameras.push_back(mc.camera);
    return set;
}

const CameraModel& CameraManifest::find(const std::string& id) const {
    for (const ManifestCamera& mc : render_cameras)
        if (mc.id == id) return mc.camera;
    for (const ManifestCamera& mc : training_cameras)
        if (mc.id == id) return mc.camera;
    throw InvalidCamera("unknown camera id: " + id);
}

CameraManifest load_camera_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoFailure("cannot open: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw MalformedHeader(std::string("camera manifest is not valid JSON: ") + e.what());
    }
    try {
        CameraManifest m;
        m.train_width = j.at("train_width").get<int>();
        m.train_height = j.at("train_height").get<int>();
        for (const json& c : j.at("training_cameras")) {
            ManifestCamera mc = camera_from_json(c);
            if (mc.camera.width != m.train_width || mc.camera.height != m.train_height)
                throw InvalidCamera("training camera " + mc.id +
                                    " does not match the training resolution");
            m.training_cameras.push_back(std::move(mc));
        }
        if (j.contains("render_cameras"))
            for (const json& c : j.at("render_cameras"))
                m.render_cameras.push_back(camera_from_json(c));
        if (m.training_cameras.empty())
            throw InvalidCamera("manifest has no training cameras");
        return m;
    } catch (const json::exception& e) {
        throw MalformedHeader(std::string("camera manifest field error: ") + e.what());
    }
}

void save_camera_manifest(const CameraManifest& manifest, const std::filesystem::path& path) {
    json j;
    j["train_width"] = manifest.train_width;
    j["train_height"] = manifest.train_height;
    j["training_cameras"] = json::array();
    for (const ManifestCamera& mc : manifest.training_cameras)
        j["training_cameras"].push_back(camera_to_json(mc));
    j["render_cameras"] = json::array();
    for (const ManifestCamera& mc : manifest.render_cameras)
        j["render_cameras"].push_back(camera_to_json(mc));

    std::ofstream out(path);
    if (!out) throw IoFailure("cannot open for writing: " + path.string());
    out << j.dump(2) << "\n";
    if (!out) throw IoFailure("write failed: " + path.string());
}

}  // namespace splataa
