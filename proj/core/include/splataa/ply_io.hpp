#pragma once

#include <filesystem>
#include <iosfwd>

#include "splataa/types.hpp"

namespace splataa {

// Reads a binary-little-endian 3DGS checkpoint. Raw fields are preserved
// (activation is separate); SH rest coefficients are deinterleaved
// channel-major, 15 per channel. Throws MalformedHeader, MissingProperty or
// TruncatedPayload; never crashes on malformed input.
GaussianCloud load_ply(std::istream& in);
GaussianCloud load_ply(const std::filesystem::path& path);

// Canonical checkpoint layout: x,y,z, nx,ny,nz (zero), f_dc_0..2,
// f_rest_0..44, opacity, scale_0..2, rot_0..3, all float32.
void write_ply(const GaussianCloud& cloud, std::ostream& out);
void write_ply(const GaussianCloud& cloud, const std::filesystem::path& path);

}  // namespace splataa
