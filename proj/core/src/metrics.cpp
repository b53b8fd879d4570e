#include "splataa/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "splataa/errors.hpp"

namespace splataa {

double psnr(const ImageBuffer& a, const ImageBuffer& b) {
    if (a.width != b.width || a.height != b.height)
        throw DimensionMismatch("psnr: image dimensions differ");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        const double d = double(a.pixels[i]) - double(b.pixels[i]);
        sum += d * d;
    }
    const double mse = sum / double(a.pixels.size());
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(1.0 / mse);
}

double psnr_capped(double psnr_db) { return std::min(psnr_db, 99.0); }

namespace {

constexpr int kWindow = 11;

std::vector<double> luma_plane(const ImageBuffer& img) {
    std::vector<double> luma(std::size_t(img.width) * img.height);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            const float* p = img.at(x, y);
            luma[std::size_t(y) * img.width + x] =
                0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2];
        }
    return luma;
}

std::vector<double> gaussian_kernel_11() {
    std::vector<double> k(kWindow);
    double sum = 0.0;
    for (int i = 0; i < kWindow; ++i) {
        const double d = i - (kWindow - 1) / 2.0;
        k[i] = std::exp(-d * d / (2.0 * 1.5 * 1.5));
        sum += k[i];
    }
    for (double& v : k) v /= sum;
    return k;
}

// horizontal pass then vertical pass, valid region only
std::vector<double> filter_valid(const std::vector<double>& in, int w, int h, int& ow, int& oh) {
    const std::vector<double> k = gaussian_kernel_11();
    ow = w - kWindow + 1;
    oh = h - kWindow + 1;
    std::vector<double> tmp(std::size_t(ow) * h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < ow; ++x) {
            double s = 0.0;
            for (int i = 0; i < kWindow; ++i) s += k[i] * in[std::size_t(y) * w + x + i];
            tmp[std::size_t(y) * ow + x] = s;
        }
    std::vector<double> out(std::size_t(ow) * oh);
    for (int y = 0; y < oh; ++y)
        for (int x = 0; x < ow; ++x) {
            double s = 0.0;
            for (int i = 0; i < kWindow; ++i) s += k[i] * tmp[std::size_t(y + i) * ow + x];
            out[std::size_t(y) * ow + x] = s;
        }
    return out;
}

}  // namespace

double ssim(const ImageBuffer& a, const ImageBuffer& b) {
    if (a.width != b.width || a.height != b.height)
        throw DimensionMismatch("ssim: image dimensions differ");
    if (a.width < kWindow || a.height < kWindow)
        throw TooSmall("ssim: images must be at least 11x11");

    const std::vector<double> x = luma_plane(a);
    const std::vector<double> y = luma_plane(b);
    const int w = a.width, h = a.height;

    std::vector<double> xx(x.size()), yy(x.size()), xy(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        xx[i] = x[i] * x[i];
        yy[i] = y[i] * y[i];
        xy[i] = x[i] * y[i];
    }

    int ow = 0, oh = 0;
    const std::vector<double> mx = filter_valid(x, w, h, ow, oh);
    const std::vector<double> my = filter_valid(y, w, h, ow, oh);
    const std::vector<double> mxx = filter_valid(xx, w, h, ow, oh);
    const std::vector<double> myy = filter_valid(yy, w, h, ow, oh);
    const std::vector<double> mxy = filter_valid(xy, w, h, ow, oh);

    constexpr double c1 = 0.01 * 0.01;  // (K1 L)^2, L = 1
    constexpr double c2 = 0.03 * 0.03;

    double total = 0.0;
    for (std::size_t i = 0; i < mx.size(); ++i) {
        const double vx = mxx[i] - mx[i] * mx[i];
        const double vy = myy[i] - my[i] * my[i];
        const double cxy = mxy[i] - mx[i] * my[i];
        const double num = (2.0 * mx[i] * my[i] + c1) * (2.0 * cxy + c2);
        const double den = (mx[i] * mx[i] + my[i] * my[i] + c1) * (vx + vy + c2);
        total += num / den;
    }
    return total / double(mx.size());
}

ImageBuffer box_downsample(const ImageBuffer& img, int factor) {
    if (factor < 1 || img.width % factor != 0 || img.height % factor != 0)
        throw DimensionMismatch("box_downsample: factor must divide both dimensions");
    ImageBuffer out(img.width / factor, img.height / factor);
    const double inv = 1.0 / (double(factor) * factor);
    for (int y = 0; y < out.height; ++y)
        for (int x = 0; x < out.width; ++x) {
            Rgb acc;
            for (int dy = 0; dy < factor; ++dy)
                for (int dx = 0; dx < factor; ++dx)
                    acc += img.get(x * factor + dx, y * factor + dy);
            out.set(x, y, acc * inv);
        }
    return out;
}

}  // namespace splataa
