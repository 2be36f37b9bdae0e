#pragma once

#include <filesystem>

#include "e2ecd/core/raster.hpp"

namespace e2ecd {

// 8-bit PNG in (gray or RGB; palette, alpha and 16-bit inputs are reduced to
// that), values mapped exactly to v/255.
RasterImage read_png(const std::filesystem::path& path);

// Writes 1- or 3-channel rasters as 8-bit PNG; values are clamped to [0,1]
// and rounded to the nearest of the 256 levels.
void write_png(const std::filesystem::path& path, const RasterImage& image);

// Masks are stored as 0/255 grayscale; any level >= 128 reads back as 1.
BinaryMask read_mask_png(const std::filesystem::path& path);
void write_mask_png(const std::filesystem::path& path, const BinaryMask& mask);

}  // namespace e2ecd
