#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "splataa/camera_manifest.hpp"
#include "splataa/errorlab.hpp"
#include "splataa/errors.hpp"
#include "splataa/image_io.hpp"
#include "splataa/metrics.hpp"
#include "splataa/ply_io.hpp"
#include "splataa/rasterizer.hpp"
#include "splataa/synth.hpp"

namespace fs = std::filesystem;
using namespace splataa;

namespace {

struct SceneInputs {
    GaussianCloud cloud;
    TrainingCameraSet training;
    std::vector<ManifestCamera> render_cameras;
};

SceneRecipe recipe_by_name(const std::string& name, std::uint64_t seed, double sigma_world) {
    SceneRecipe recipe;
    recipe.seed = seed;
    if (name == "checker") {
        CheckerWall wall;
        if (sigma_world > 0.0) wall.gaussian_sigma_world = sigma_world;
        recipe.kind = wall;
    } else if (name == "single") {
        SingleSplat splat;
        if (sigma_world > 0.0) splat.sigma_world = sigma_world;
        recipe.kind = splat;
    } else if (name == "star") {
        recipe.kind = StarBurst{};
    } else {
        throw InvalidRecipe("unknown recipe: " + name + " (expected checker|single|star)");
    }
    return recipe;
}

SceneInputs load_inputs(const std::string& ply_path, const std::string& recipe_name,
                        const std::string& cameras_path, std::uint64_t seed,
                        double recipe_sigma) {
    SceneInputs in;
    if (!recipe_name.empty()) {
        SynthScene scene = build_scene(recipe_by_name(recipe_name, seed, recipe_sigma));
        in.cloud = std::move(scene.cloud);
        in.training = std::move(scene.cameras);
    } else {
        in.cloud = load_ply(fs::path(ply_path));
    }
    if (!cameras_path.empty()) {
        CameraManifest manifest = load_camera_manifest(cameras_path);
        in.training = manifest.training_set();
        in.render_cameras = std::move(manifest.render_cameras);
    }
    return in;
}

CameraModel pick_view(const SceneInputs& in, const std::string& view_id) {
    for (const ManifestCamera& mc : in.render_cameras)
        if (mc.id == view_id) return mc.camera;
    // fall back to a training camera index
    char* end = nullptr;
    const long idx = std::strtol(view_id.c_str(), &end, 10);
    if (end && *end == '\0' && !in.training.empty() && idx >= 0 &&
        idx < long(in.training.cameras.size()))
        return in.training.cameras[idx];
    throw InvalidCamera("unknown view id: " + view_id);
}

FilterMode parse_filter(const std::string& s) {
    if (s == "none") return FilterMode::None;
    if (s == "dilate") return FilterMode::FixedDilation;
    if (s == "sa") return FilterMode::ScaleAdaptive;
    throw Error("unknown filter: " + s);
}

BlendMode parse_blend(const std::string& s) {
    if (s == "point") return BlendMode::PointSample;
    if (s == "ss") return BlendMode::SuperSample;
    if (s == "int") return BlendMode::Integrate;
    throw Error("unknown blend: " + s);
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

int run_render(const std::string& ply, const std::string& recipe, const std::string& cameras,
               const std::string& view, const std::string& out_path,
               const std::string& filter, const std::string& blend, int ss_grid,
               double sigma_l, double scale, int threads, std::uint64_t seed,
               double recipe_sigma) {
    SceneInputs in = load_inputs(ply, recipe, cameras, seed, recipe_sigma);

    RenderSettings settings;
    settings.filter_mode = parse_filter(filter);
    settings.blend_mode = parse_blend(blend);
    settings.ss_grid = ss_grid;
    settings.sigma_l = sigma_l;
    if (settings.filter_mode == FilterMode::ScaleAdaptive && in.training.empty())
        throw MissingTrainingCameras("--filter sa needs --cameras or a --recipe scene");

    CameraModel cam = pick_view(in, view);
    if (scale != 1.0) cam = cam.scaled(scale);

    RenderStats stats;
    const auto t0 = std::chrono::steady_clock::now();
    ImageBuffer img = render_with_stats(in.cloud, cam, &in.training, settings, stats, threads);
    const auto dt =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0);

    write_png(img, out_path);
    std::printf("splats=%zu culled=%zu wall_ms=%.1f out=%s\n", stats.projected, stats.culled,
                dt.count(), out_path.c_str());
    return 0;
}

int run_zoom_sweep(const std::string& ply, const std::string& recipe,
                   const std::string& cameras, const std::string& view,
                   const std::string& scales_csv, const std::string& filters_csv,
                   const std::string& blends_csv, const std::string& out_dir, int threads,
                   std::uint64_t seed, double recipe_sigma) {
    SceneInputs in = load_inputs(ply, recipe, cameras, seed, recipe_sigma);
    const CameraModel base_cam = pick_view(in, view);

    fs::create_directories(out_dir);
    std::ofstream csv(fs::path(out_dir) / "zoom_sweep.csv");
    if (!csv) throw IoFailure("cannot open zoom_sweep.csv for writing");
    csv << "scale,filter,blend,psnr_db,ssim\n";

    for (const std::string& scale_str : split_list(scales_csv)) {
        const double scale = std::stod(scale_str);
        if (!(scale > 0.0)) throw Error("scales must be positive");
        for (const std::string& filter : split_list(filters_csv)) {
            for (const std::string& blend : split_list(blends_csv)) {
                RenderSettings settings;
                settings.filter_mode = parse_filter(filter);
                settings.blend_mode = parse_blend(blend);

                const CameraModel cam = base_cam.scaled(scale);
                const ImageBuffer img = render(in.cloud, cam, &in.training, settings, threads);

                ImageBuffer ref;
                if (scale <= 1.0) {
                    // reference: the 1x point-sampled render of the same
                    // filter (the checkpoint's native appearance), box-downsampled
                    const int factor = int(std::lround(1.0 / scale));
                    RenderSettings ref_settings = settings;
                    ref_settings.blend_mode = BlendMode::PointSample;
                    const ImageBuffer full =
                        render(in.cloud, base_cam, &in.training, ref_settings, threads);
                    ref = factor == 1 ? full : box_downsample(full, factor);
                } else {
                    // zoom-in: the scale-adaptive supersampled render is the
                    // ordering reference
                    RenderSettings ref_settings = settings;
                    ref_settings.filter_mode = FilterMode::ScaleAdaptive;
                    ref_settings.blend_mode = BlendMode::SuperSample;
                    ref = render(in.cloud, cam, &in.training, ref_settings, threads);
                }

                const double db = psnr_capped(psnr(img, ref));
                const double sim = ssim(img, ref);
                csv << scale_str << ',' << filter << ',' << blend << ',' << db << ',' << sim
                    << '\n';

                char name[128];
                std::snprintf(name, sizeof(name), "render_s%s_%s_%s.png", scale_str.c_str(),
                              filter.c_str(), blend.c_str());
                write_png(img, fs::path(out_dir) / name);
            }
        }
    }
    std::printf("wrote %s\n", (fs::path(out_dir) / "zoom_sweep.csv").c_str());
    return 0;
}

int run_err_grid(int oracle_samples, int theta_count, const std::string& out_dir,
                 int threads) {
    ErrorGridSpec spec = ErrorGridSpec::defaults();
    spec.oracle_samples = oracle_samples;
    if (theta_count != 6) {
        spec.theta_values.clear();
        for (int i = 0; i < theta_count; ++i)
            spec.theta_values.push_back(
                theta_count == 1 ? 0.0
                                 : (3.14159265358979323846 / 4.0) * i / (theta_count - 1));
    }

    const auto t0 = std::chrono::steady_clock::now();
    const ErrorGridReport report = run_sweep(spec, threads);
    const auto dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        write_error_csv(report, fs::path(out_dir) / "error_grid.csv");
        write_error_heatmaps(report, fs::path(out_dir) / "heatmaps");
    }
    std::printf("cells=%zu mean_rel_err=%.6f (%.4f%%) wall_s=%.1f\n", report.cells.size(),
                report.mean_rel_err, 100.0 * report.mean_rel_err, dt);
    return 0;
}

int run_compare(const std::string& a_path, const std::string& b_path) {
    const ImageBuffer a = read_png(a_path);
    const ImageBuffer b = read_png(b_path);
    const double db = psnr_capped(psnr(a, b));
    const double sim = ssim(a, b);
    std::printf("PSNR_dB=%.2f SSIM=%.4f\n", db, sim);
    return 0;
}

int run_synth_make(const std::string& recipe, std::uint64_t seed, const std::string& out_dir,
                   double recipe_sigma) {
    SynthScene scene = build_scene(recipe_by_name(recipe, seed, recipe_sigma));
    fs::create_directories(out_dir);
    write_ply(scene.cloud, fs::path(out_dir) / "scene.ply");

    CameraManifest manifest;
    manifest.train_width = scene.cameras.train_width;
    manifest.train_height = scene.cameras.train_height;
    for (int i = 0; i < int(scene.cameras.cameras.size()); ++i)
        manifest.training_cameras.push_back(
            {"train" + std::to_string(i), scene.cameras.cameras[i]});
    manifest.render_cameras.push_back({"front", scene.cameras.cameras[0]});
    save_camera_manifest(manifest, fs::path(out_dir) / "cameras.json");

    std::printf("wrote %s and %s (%zu gaussians, %zu cameras)\n",
                (fs::path(out_dir) / "scene.ply").c_str(),
                (fs::path(out_dir) / "cameras.json").c_str(), scene.cloud.size(),
                scene.cameras.cameras.size());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CPU renderer for 3D Gaussian Splatting scenes with scale-adaptive "
                 "anti-aliasing"};
    app.require_subcommand(1);

    // render
    auto* render_cmd = app.add_subcommand("render", "Render one view to a PNG");
    std::string ply, recipe, cameras, view = "0", out_path = "out.png";
    std::string filter = "sa", blend = "point";
    int ss_grid = 3, threads = 0;
    double sigma_l = 0.3, scale = 1.0, recipe_sigma = 0.0;
    std::uint64_t seed = 0;
    render_cmd->add_option("--ply", ply, "Gaussian checkpoint (.ply)");
    render_cmd->add_option("--recipe", recipe, "Synthetic scene: checker|single|star");
    render_cmd->add_option("--cameras", cameras, "Camera manifest (JSON)");
    render_cmd->add_option("--view", view, "Render camera id or training index");
    render_cmd->add_option("--out", out_path, "Output PNG path");
    render_cmd->add_option("--filter", filter, "none|dilate|sa");
    render_cmd->add_option("--blend", blend, "point|ss|int");
    render_cmd->add_option("--ss-grid", ss_grid, "Super-sampling grid S");
    render_cmd->add_option("--sigma-l", sigma_l, "Low-pass filter variance");
    render_cmd->add_option("--scale", scale, "Resolution multiplier");
    render_cmd->add_option("--threads", threads, "Tile workers (0 = hardware)");
    render_cmd->add_option("--seed", seed, "Recipe seed");
    render_cmd->add_option("--recipe-sigma", recipe_sigma,
                           "Override the recipe's gaussian sigma (world units)");

    // zoom-sweep
    auto* sweep_cmd = app.add_subcommand("zoom-sweep", "PSNR/SSIM across scales");
    std::string scales = "1,0.5,0.25,0.125", filters = "sa,dilate", blends = "point,ss,int";
    std::string sweep_out = "sweep_out";
    sweep_cmd->add_option("--ply", ply, "Gaussian checkpoint (.ply)");
    sweep_cmd->add_option("--recipe", recipe, "Synthetic scene: checker|single|star");
    sweep_cmd->add_option("--cameras", cameras, "Camera manifest (JSON)");
    sweep_cmd->add_option("--view", view, "Render camera id or training index");
    sweep_cmd->add_option("--scales", scales, "Comma list of resolution multipliers");
    sweep_cmd->add_option("--filters", filters, "Comma list of filters");
    sweep_cmd->add_option("--blends", blends, "Comma list of blend modes");
    sweep_cmd->add_option("--out", sweep_out, "Output directory");
    sweep_cmd->add_option("--threads", threads, "Tile workers (0 = hardware)");
    sweep_cmd->add_option("--seed", seed, "Recipe seed");
    sweep_cmd->add_option("--recipe-sigma", recipe_sigma,
                          "Override the recipe's gaussian sigma (world units)");

    // err-grid
    auto* grid_cmd = app.add_subcommand("err-grid", "Rotated-pixel integration error sweep");
    int oracle_samples = 512, theta_count = 6;
    std::string grid_out;
    grid_cmd->add_option("--oracle-samples", oracle_samples, "Quadrature intervals per axis");
    grid_cmd->add_option("--theta-count", theta_count, "Number of pixel tilt samples");
    grid_cmd->add_option("--out", grid_out, "Output directory (CSV + heatmaps)");
    grid_cmd->add_option("--threads", threads, "Worker threads (0 = hardware)");

    // compare
    auto* compare_cmd = app.add_subcommand("compare", "PSNR/SSIM between two PNGs");
    std::string a_path, b_path;
    compare_cmd->add_option("--a", a_path, "First image")->required();
    compare_cmd->add_option("--b", b_path, "Second image")->required();

    // synth-make
    auto* synth_cmd = app.add_subcommand("synth-make", "Write a synthetic scene to disk");
    std::string synth_recipe = "checker", synth_out = "scene_out";
    synth_cmd->add_option("--recipe", synth_recipe, "checker|single|star");
    synth_cmd->add_option("--seed", seed, "Recipe seed");
    synth_cmd->add_option("--out", synth_out, "Output directory");
    synth_cmd->add_option("--recipe-sigma", recipe_sigma,
                          "Override the recipe's gaussian sigma (world units)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // bad flags are input errors
    }

    try {
        if (render_cmd->parsed()) {
            if (ply.empty() == recipe.empty())
                throw Error("exactly one of --ply or --recipe is required");
            return run_render(ply, recipe, cameras, view, out_path, filter, blend, ss_grid,
                              sigma_l, scale, threads, seed, recipe_sigma);
        }
        if (sweep_cmd->parsed()) {
            if (ply.empty() == recipe.empty())
                throw Error("exactly one of --ply or --recipe is required");
            return run_zoom_sweep(ply, recipe, cameras, view, scales, filters, blends,
                                  sweep_out, threads, seed, recipe_sigma);
        }
        if (grid_cmd->parsed()) return run_err_grid(oracle_samples, theta_count, grid_out, threads);
        if (compare_cmd->parsed()) return run_compare(a_path, b_path);
        if (synth_cmd->parsed())
            return run_synth_make(synth_recipe, seed, synth_out, recipe_sigma);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
