#include "splataa/errorlab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <numbers>
#include <thread>

#include "splataa/blending.hpp"
#include "splataa/errors.hpp"
#include "splataa/image_io.hpp"
#include "splataa/types.hpp"

namespace splataa {

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

}  // namespace

ErrorGridSpec ErrorGridSpec::defaults() {
    ErrorGridSpec s;
    s.theta_values = linspace(0.0, std::numbers::pi / 4.0, 6);
    s.y_c_values = linspace(0.05, 0.25, 6);
    s.sigma_values = linspace(0.15, 3.77, 30);
    return s;
}

void ErrorGridSpec::validate() const {
    if (!(side > 0.0)) throw Error("error grid: side must be positive");
    if (theta_values.empty() || y_c_values.empty() || sigma_values.empty())
        throw Error("error grid: sample lists must be nonempty");
    for (double s : sigma_values)
        if (!(s > 0.0)) throw Error("error grid: sigma values must be positive");
    if (oracle_samples < 2 || oracle_samples % 2 != 0)
        throw Error("error grid: oracle_samples must be even and >= 2");
}

double oracle_integral(const RotatedPixel& pixel, double sigma_x, double sigma_y,
                       int samples) {
    const int n = samples;
    const double h = pixel.side / n;
    const double u0 = -0.5 * pixel.side;
    const double c = std::cos(pixel.theta), s = std::sin(pixel.theta);
    const double xc = pixel.center.x, yc = pixel.center.y;
    const double ivx = 1.0 / (sigma_x * sigma_x), ivy = 1.0 / (sigma_y * sigma_y);

    // Point on the pixel at local coords (u, v):
    //   x = xc + u c - v s,  y = yc + u s + v c
    // so the exponent is quadratic in (u, v):
    //   E = A u^2 + B u v + C v^2 + D u + E0 v + F.
    const double A = 0.5 * (c * c * ivx + s * s * ivy);
    const double B = c * s * (ivy - ivx);
    const double C = 0.5 * (s * s * ivx + c * c * ivy);
    const double D = xc * c * ivx + yc * s * ivy;
    const double E0 = -xc * s * ivx + yc * c * ivy;
    const double F = 0.5 * (xc * xc * ivx + yc * yc * ivy);

    // exp(-E) factorizes as P(u) Q(v) g^(ab) on the regular grid
    // (u_a = u0 + a h), which keeps the double sum at one multiply-add per
    // node instead of one exp per node. Validated against direct evaluation.
    std::vector<double> row(n + 1);  // w_a * P(u_a) * rho^a
    const double rho = std::exp(-B * u0 * h);
    const double g = std::exp(-B * h * h);
    double rho_a = 1.0;
    for (int a = 0; a <= n; ++a) {
        const double u = u0 + a * h;
        const double w = (a == 0 || a == n) ? 1.0 : (a % 2 == 1 ? 4.0 : 2.0);
        row[a] = w * std::exp(-A * u * u - D * u) * rho_a;
        rho_a *= rho;
    }

    double total = 0.0;
    double g_b = 1.0;  // g^b
    double rho_b = 1.0;
    for (int b = 0; b <= n; ++b) {
        const double v = u0 + b * h;
        const double w = (b == 0 || b == n) ? 1.0 : (b % 2 == 1 ? 4.0 : 2.0);
        double inner = 0.0;
        double t = 1.0;  // (g^b)^a
        for (int a = 0; a <= n; ++a) {
            inner += row[a] * t;
            t *= g_b;
        }
        total += w * std::exp(-C * v * v - E0 * v) * rho_b * inner;
        rho_b *= rho;
        g_b *= g;
    }

    const double k = std::exp(-F - B * u0 * u0) /
                     (2.0 * std::numbers::pi * sigma_x * sigma_y);
    return (h / 3.0) * (h / 3.0) * k * total;
}

double approx_integral(const RotatedPixel& pixel, double sigma_x, double sigma_y) {
    const double c = std::cos(pixel.theta), s = std::sin(pixel.theta);
    const double scale = 1.0 / (std::abs(s) + std::abs(c));
    const double half = 0.5 * pixel.side * scale;

    double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
    double y_min = x_min, y_max = -x_min;
    for (int a : {-1, 1})
        for (int b : {-1, 1}) {
            const double x = pixel.center.x + (a * c - b * s) * half;
            const double y = pixel.center.y + (a * s + b * c) * half;
            x_min = std::min(x_min, x);
            x_max = std::max(x_max, x);
            y_min = std::min(y_min, y);
            y_max = std::max(y_max, y);
        }
    return (gaussian_cdf(x_max / sigma_x) - gaussian_cdf(x_min / sigma_x)) *
           (gaussian_cdf(y_max / sigma_y) - gaussian_cdf(y_min / sigma_y));
}

BoundPair bounds(const RotatedPixel& pixel, double sigma_x, double sigma_y) {
    const double c = std::cos(pixel.theta), s = std::sin(pixel.theta);
    const double half = 0.5 * pixel.side;

    // Normalize: (x/sigma_x, y/sigma_y) turns the tilted square into a
    // parallelogram over the standard bivariate normal. The edges that were
    // parallel to the pixel's own x-axis map to direction wh; rotating by
    // -angle(wh) makes them horizontal without changing the integral.
    const Vec2 wh{c / sigma_x, s / sigma_y};
    const double ang = std::atan2(wh.y, wh.x);
    const double rc = std::cos(-ang), rs = std::sin(-ang);

    // corners indexed by (a, b): a along the pixel x-edge, b along the side edge
    double top_y = 0.0, bot_y = 0.0;
    double top_x[2], bot_x[2];
    for (int bi = 0; bi < 2; ++bi) {
        const int b = bi == 0 ? -1 : 1;
        for (int ai = 0; ai < 2; ++ai) {
            const int a = ai == 0 ? -1 : 1;
            const double px = pixel.center.x + (a * c - b * s) * half;
            const double py = pixel.center.y + (a * s + b * c) * half;
            const double nx = px / sigma_x, ny = py / sigma_y;
            const double x = rc * nx - rs * ny;
            const double y = rs * nx + rc * ny;
            (bi == 0 ? bot_x : top_x)[ai] = x;
            (bi == 0 ? bot_y : top_y) = y;  // same b => same height by construction
        }
    }
    if (top_y < bot_y) {
        std::swap(top_y, bot_y);
        std::swap(top_x[0], bot_x[0]);
        std::swap(top_x[1], bot_x[1]);
    }
    // reflect across the x-axis so the top edge has y >= 0
    if (top_y < 0.0) {
        const double new_top = -bot_y, new_bot = -top_y;
        std::swap(top_x[0], bot_x[0]);
        std::swap(top_x[1], bot_x[1]);
        top_y = new_top;
        bot_y = new_bot;
    }

    const double x1 = std::max(top_x[0], top_x[1]);  // top-right
    const double x2 = std::min(top_x[0], top_x[1]);  // top-left
    const double x3 = std::min(bot_x[0], bot_x[1]);  // bottom-left
    const double x4 = std::max(bot_x[0], bot_x[1]);  // bottom-right

    const double mass_y = gaussian_cdf(top_y) - gaussian_cdf(bot_y);

    // Every horizontal slice of the parallelogram is an interval translating
    // linearly between the top and bottom edges, so freezing the slice at the
    // intersection (resp. union) of all slices bounds the integral from below
    // (resp. above).
    const double lo_l = std::max(x2, x3), lo_r = std::min(x1, x4);
    const double hi_l = std::min(x2, x3), hi_r = std::max(x1, x4);

    BoundPair b;
    b.lower = mass_y * std::max(0.0, gaussian_cdf(lo_r) - gaussian_cdf(lo_l));
    b.upper = mass_y * (gaussian_cdf(hi_r) - gaussian_cdf(hi_l));
    return b;
}

double sigmoid_error_transform(double err) { return 1.0 / (1.0 + std::exp(-800.0 * err)); }

ErrorGridReport run_sweep(const ErrorGridSpec& spec, int threads) {
    spec.validate();

    ErrorGridReport report;
    report.spec = spec;

    const int nt = int(spec.theta_values.size());
    const int ny = int(spec.y_c_values.size());
    const int ns = int(spec.sigma_values.size());
    const std::size_t total = std::size_t(nt) * ny * ns * ns;
    report.cells.resize(total);

    int workers = threads > 0 ? threads : int(std::thread::hardware_concurrency());
    workers = std::max(1, workers);

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= total) return;
            const int it = int(i / (std::size_t(ny) * ns * ns));
            const int iy = int(i / (std::size_t(ns) * ns)) % ny;
            const int ix = int(i / ns) % ns;
            const int iy2 = int(i % ns);

            ErrorGridCell& cell = report.cells[i];
            cell.theta = spec.theta_values[it];
            cell.y_c = spec.y_c_values[iy];
            cell.sigma_x = spec.sigma_values[ix];
            cell.sigma_y = spec.sigma_values[iy2];

            const RotatedPixel px{{spec.x_c, cell.y_c}, spec.side, cell.theta};
            cell.oracle = oracle_integral(px, cell.sigma_x, cell.sigma_y,
                                          spec.oracle_samples);
            cell.approx = approx_integral(px, cell.sigma_x, cell.sigma_y);
            cell.rel_err = std::abs(cell.approx - cell.oracle) /
                           std::max(cell.oracle, 1e-12);
            cell.sigmoid = sigmoid_error_transform(cell.rel_err);
        }
    };

    std::vector<std::thread> pool;
    for (int i = 1; i < workers; ++i) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    double sum = 0.0;
    for (const ErrorGridCell& c : report.cells) sum += c.rel_err;
    report.mean_rel_err = sum / double(total);
    return report;
}

void write_error_csv(const ErrorGridReport& report, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoFailure("cannot open for writing: " + path.string());
    out << "theta,y_c,sigma_x,sigma_y,oracle,approx,rel_err,sigmoid\n";
    out.precision(12);
    for (const ErrorGridCell& c : report.cells)
        out << c.theta << ',' << c.y_c << ',' << c.sigma_x << ',' << c.sigma_y << ','
            << c.oracle << ',' << c.approx << ',' << c.rel_err << ',' << c.sigmoid
            << '\n';
    if (!out) throw IoFailure("write failed: " + path.string());
}

void write_error_heatmaps(const ErrorGridReport& report, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const int nt = int(report.spec.theta_values.size());
    const int ny = int(report.spec.y_c_values.size());
    const int ns = int(report.spec.sigma_values.size());
    const int cell_px = 8;  // nearest-neighbor upscale for visibility

    for (int it = 0; it < nt; ++it)
        for (int iy = 0; iy < ny; ++iy) {
            ImageBuffer img(ns * cell_px, ns * cell_px);
            for (int ix = 0; ix < ns; ++ix)
                for (int iy2 = 0; iy2 < ns; ++iy2) {
                    const std::size_t idx =
                        ((std::size_t(it) * ny + iy) * ns + ix) * ns + iy2;
                    // sigmoid of a non-negative error lives in [0.5, 1)
                    const double v = 2.0 * report.cells[idx].sigmoid - 1.0;
                    const Rgb c{v, 0.15 + 0.35 * (1.0 - v), 1.0 - v};
                    for (int dy = 0; dy < cell_px; ++dy)
                        for (int dx = 0; dx < cell_px; ++dx)
                            img.set(ix * cell_px + dx,
                                    (ns - 1 - iy2) * cell_px + dy, c);
                }
            char name[64];
            std::snprintf(name, sizeof(name), "errgrid_t%02d_y%02d.png", it, iy);
            write_png(img, dir / name);
        }
}

}  // namespace splataa
