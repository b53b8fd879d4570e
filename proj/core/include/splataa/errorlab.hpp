#pragma once

#include <filesystem>
#include <vector>

#include "splataa/math.hpp"

namespace splataa {

// A square pixel tilted counter-clockwise by theta, integrated against an
// axis-aligned bivariate normal with stddevs (sigma_x, sigma_y) at the origin.
struct RotatedPixel {
    Vec2 center;
    double side = 1.0;
    double theta = 0.0;
};

struct ErrorGridSpec {
    double side = 1.0;
    double x_c = 0.0;
    std::vector<double> theta_values;  // default: 6 values in [0, pi/4], inclusive
    std::vector<double> y_c_values;    // default: 6 values in [0.05, 0.25]
    std::vector<double> sigma_values;  // default: 30 values in [0.15, 3.77]
    int oracle_samples = 512;          // per-axis quadrature intervals (even)

    static ErrorGridSpec defaults();
    void validate() const;  // throws Error on malformed ranges
};

struct ErrorGridCell {
    double theta = 0.0;
    double y_c = 0.0;
    double sigma_x = 0.0;
    double sigma_y = 0.0;
    double oracle = 0.0;
    double approx = 0.0;
    double rel_err = 0.0;
    double sigmoid = 0.0;
};

struct ErrorGridReport {
    ErrorGridSpec spec;
    std::vector<ErrorGridCell> cells;  // theta-major, then y_c, then sigma_x, sigma_y
    double mean_rel_err = 0.0;
};

// Lower/upper fixed-slice bounds on the pixel integral.
struct BoundPair {
    double lower = 0.0;
    double upper = 0.0;
};

// Brute-force reference: composite Simpson quadrature on a samples^2 grid
// mapped onto the rotated square. Relative accuracy is far better than 1e-5
// at the default resolution.
double oracle_integral(const RotatedPixel& pixel, double sigma_x, double sigma_y,
                       int samples = 512);

// Rotated-pixel factorization: corners scaled about the pixel center by
// 1/(sin theta + cos theta), projected onto the Gaussian axes, then the
// CDF product over the resulting box. Exact at theta = 0.
double approx_integral(const RotatedPixel& pixel, double sigma_x, double sigma_y);

// Fixed-slice sandwich: normalize to a standard bivariate normal, rotate the
// resulting parallelogram so its top/bottom edges are horizontal, then freeze
// the x-slice at the intersection (lower) and union (upper) of the slices.
// Vertical side edges (infinite slope) reduce both to the exact rectangle
// value, so lower = upper there.
BoundPair bounds(const RotatedPixel& pixel, double sigma_x, double sigma_y);

// Visualization transform for near-zero errors: 1 / (1 + exp(-800 x)).
double sigmoid_error_transform(double err);

// Full parametric sweep. threads = 0 uses the hardware concurrency.
ErrorGridReport run_sweep(const ErrorGridSpec& spec, int threads = 0);

// One row per cell: theta,y_c,sigma_x,sigma_y,oracle,approx,rel_err,sigmoid.
void write_error_csv(const ErrorGridReport& report, const std::filesystem::path& path);

// One PNG per (theta, y_c) sub-grid, sigma_x horizontal, sigma_y vertical,
// shaded by the sigmoid-transformed error.
void write_error_heatmaps(const ErrorGridReport& report, const std::filesystem::path& dir);

}  // namespace splataa
