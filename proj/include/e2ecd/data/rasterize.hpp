#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "e2ecd/core/raster.hpp"
#include "e2ecd/data/types.hpp"

namespace e2ecd::data {

// Per-pixel polygon index map: 0 is background, k > 0 means polygons[k-1]
// covers the pixel. A pixel (row i, col j) is covered when its center
// (j + 0.5, i + 0.5) is inside the ring under the even-odd rule; later
// polygons overwrite earlier ones.
struct LabelMap {
  int height = 0;
  int width = 0;
  std::vector<std::int32_t> labels;

  std::int32_t at(int y, int x) const {
    return labels[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(x)];
  }
};

LabelMap rasterize_polygons(std::span<const BuildingPolygon> polygons, int height, int width);

// changed(x) = pre XOR post, or both covered and the post-event building at x
// is damaged. Pre-event buildings are undamaged by convention, so the
// overlapping case reduces to the post-event damage class.
BinaryMask derive_change_map(std::span<const BuildingPolygon> pre,
                             std::span<const BuildingPolygon> post, int height, int width);

}  // namespace e2ecd::data
