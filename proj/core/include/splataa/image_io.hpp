#pragma once

#include <filesystem>

#include "splataa/types.hpp"

namespace splataa {

// 8-bit RGB PNG, quantization rounds half up. Throws IoFailure.
void write_png(const ImageBuffer& img, const std::filesystem::path& path);
ImageBuffer read_png(const std::filesystem::path& path);

}  // namespace splataa
