#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "e2ecd/core/raster.hpp"

namespace e2ecd {

// Middlebury .flo: float tag 202021.25, int32 width, int32 height, then
// interleaved (u, v) float32 values, all little-endian.
inline constexpr float kFloTag = 202021.25f;

std::vector<std::uint8_t> encode_flo(const FlowField& flow);
FlowField decode_flo(std::span<const std::uint8_t> bytes);

FlowField read_flo(const std::filesystem::path& path);
void write_flo(const std::filesystem::path& path, const FlowField& flow);

// Whole-file helpers shared with the weight container.
std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace e2ecd
