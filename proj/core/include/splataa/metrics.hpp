#pragma once

#include "splataa/types.hpp"

namespace splataa {

// 10 log10(1 / MSE) over RGB in [0,1]; +inf for identical images.
// Throws DimensionMismatch.
double psnr(const ImageBuffer& a, const ImageBuffer& b);

// Clamp for CSV / display output: identical images report 99 dB.
double psnr_capped(double psnr_db);

// Single-scale SSIM on Rec.601 luma, 11x11 Gaussian window sigma 1.5,
// K1 = 0.01, K2 = 0.03, averaged over the valid region.
// Throws DimensionMismatch / TooSmall (min side 11).
double ssim(const ImageBuffer& a, const ImageBuffer& b);

// Average of factor x factor blocks; dimensions must divide evenly.
ImageBuffer box_downsample(const ImageBuffer& img, int factor);

}  // namespace splataa
