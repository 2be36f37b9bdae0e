#pragma once

#include <span>
#include <string>

#include "e2ecd/core/raster.hpp"
#include "e2ecd/net/tensor.hpp"
#include "e2ecd/net/weights.hpp"

namespace e2ecd::net {

enum class Activation { None, Relu };

// 3x3 convolution, zero padding 1, on channels-last rasters. `kernel` is
// [3,3,cin,cout] and `bias` [cout] (empty bias means none).
RasterImage conv2d(const RasterImage& input, std::span<const float> kernel,
                   std::span<const float> bias, int cout, int stride = 1,
                   Activation act = Activation::None);

// conv2d reading "<prefix>.weight" and "<prefix>.bias" from the store.
RasterImage conv2d(const RasterImage& input, const WeightStore& weights, const std::string& prefix,
                   int stride, Activation act, const std::string& context = {});

// 3^4 convolution over (i, j, k, l), zero padding 1 on all four axes, stride
// 1, no bias. `kernel` is [3,3,3,3,cin,cout].
Corr4D conv4d(const Corr4D& input, std::span<const float> kernel, int cout,
              Activation act = Activation::None);

RasterImage concat_channels(const RasterImage& a, const RasterImage& b);

}  // namespace e2ecd::net
