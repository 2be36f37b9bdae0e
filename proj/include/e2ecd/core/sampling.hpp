#pragma once

#include <span>
#include <vector>

#include "e2ecd/core/raster.hpp"

namespace e2ecd {

// Bilinear interpolation at continuous (x, y), x along columns. Corners
// outside the raster contribute zero. `out` must hold image.channels() values.
void bilinear_sample(const RasterImage& image, double x, double y, std::span<float> out);
std::vector<float> bilinear_sample(const RasterImage& image, double x, double y);

// output(x) = source(x + flow(x)), channel-wise.
RasterImage warp_by_flow(const RasterImage& source, const FlowField& flow);

// Corner-aligned bilinear upsampling: output corners coincide with input
// corners, so factor 1 is the identity and constants stay constant.
RasterImage upsample_bilinear(const RasterImage& map, int factor);

// Spatial upsampling of both components followed by scaling every
// displacement by `factor`, since displacements are in the field's own pixels.
FlowField upsample_flow(const FlowField& flow, int factor);

}  // namespace e2ecd
