#include "e2ecd/core/raster.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "e2ecd/core/error.hpp"

namespace e2ecd {
namespace {

void check_dims(int height, int width, int channels) {
  if (height < 0 || width < 0 || channels < 0) {
    throw InvalidArgument("negative raster dimension " + std::to_string(height) + "x" +
                          std::to_string(width) + "x" + std::to_string(channels));
  }
}

void check_crop(int y0, int x0, int h, int w, int height, int width) {
  if (y0 < 0 || x0 < 0 || h < 0 || w < 0 || y0 + h > height || x0 + w > width) {
    throw InvalidArgument("crop window outside the raster");
  }
}

}  // namespace

RasterImage::RasterImage(int height, int width, int channels, float fill)
    : height_(height), width_(width), channels_(channels) {
  check_dims(height, width, channels);
  data_.assign(static_cast<std::size_t>(height) * static_cast<std::size_t>(width) *
                   static_cast<std::size_t>(channels),
               fill);
}

RasterImage::RasterImage(int height, int width, int channels, std::vector<float> data)
    : height_(height), width_(width), channels_(channels), data_(std::move(data)) {
  check_dims(height, width, channels);
  if (data_.size() != static_cast<std::size_t>(height) * static_cast<std::size_t>(width) *
                          static_cast<std::size_t>(channels)) {
    throw InvalidShape("raster data length " + std::to_string(data_.size()) +
                       " does not match " + std::to_string(height) + "x" +
                       std::to_string(width) + "x" + std::to_string(channels));
  }
}

RasterImage RasterImage::crop(int y0, int x0, int height, int width) const {
  check_crop(y0, x0, height, width, height_, width_);
  RasterImage out(height, width, channels_);
  for (int y = 0; y < height; ++y) {
    const auto src = pixel(y0 + y, x0);
    std::copy_n(src.data(), static_cast<std::size_t>(width) * channels_,
                out.data_.data() + out.index(y, 0));
  }
  return out;
}

RasterImage RasterImage::channel(int c) const {
  if (c < 0 || c >= channels_) throw InvalidArgument("channel index out of range");
  RasterImage out(height_, width_, 1);
  for (std::size_t p = 0; p < pixel_count(); ++p) {
    out.data_[p] = data_[p * static_cast<std::size_t>(channels_) + static_cast<std::size_t>(c)];
  }
  return out;
}

FlowField::FlowField(int height, int width, Vec2 fill) : height_(height), width_(width) {
  check_dims(height, width, 2);
  uv_.resize(2 * static_cast<std::size_t>(height) * static_cast<std::size_t>(width));
  for (std::size_t i = 0; i < uv_.size(); i += 2) {
    uv_[i] = fill.u;
    uv_[i + 1] = fill.v;
  }
}

FlowField::FlowField(int height, int width, std::vector<float> interleaved_uv)
    : height_(height), width_(width), uv_(std::move(interleaved_uv)) {
  check_dims(height, width, 2);
  if (uv_.size() != 2 * static_cast<std::size_t>(height) * static_cast<std::size_t>(width)) {
    throw InvalidShape("flow data length does not match 2 x height x width");
  }
}

RasterImage FlowField::as_raster() const { return {height_, width_, 2, uv_}; }

FlowField FlowField::from_raster(const RasterImage& two_channel) {
  if (two_channel.channels() != 2) {
    throw InvalidShape("flow raster must have exactly 2 channels, got " +
                       std::to_string(two_channel.channels()));
  }
  const auto d = two_channel.data();
  return {two_channel.height(), two_channel.width(), std::vector<float>(d.begin(), d.end())};
}

FlowField FlowField::crop(int y0, int x0, int height, int width) const {
  return from_raster(as_raster().crop(y0, x0, height, width));
}

BinaryMask::BinaryMask(int height, int width, bool fill) : height_(height), width_(width) {
  check_dims(height, width, 1);
  bits_.assign(static_cast<std::size_t>(height) * static_cast<std::size_t>(width),
               fill ? 1 : 0);
}

std::size_t BinaryMask::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

BinaryMask BinaryMask::crop(int y0, int x0, int height, int width) const {
  check_crop(y0, x0, height, width, height_, width_);
  BinaryMask out(height, width);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) out.set(y, x, at(y0 + y, x0 + x));
  }
  return out;
}

}  // namespace e2ecd
