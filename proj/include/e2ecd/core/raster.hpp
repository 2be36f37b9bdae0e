#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace e2ecd {

// Row-major H x W x C array of 32-bit reals. Imagery lives in [0,1]; feature
// maps are unbounded.
class RasterImage {
 public:
  RasterImage() = default;
  RasterImage(int height, int width, int channels, float fill = 0.0f);
  RasterImage(int height, int width, int channels, std::vector<float> data);

  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }
  int channels() const noexcept { return channels_; }
  bool empty() const noexcept { return data_.empty(); }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(height_) * static_cast<std::size_t>(width_);
  }

  std::span<float> data() noexcept { return data_; }
  std::span<const float> data() const noexcept { return data_; }

  std::size_t index(int y, int x, int c = 0) const noexcept {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
            static_cast<std::size_t>(x)) *
               static_cast<std::size_t>(channels_) +
           static_cast<std::size_t>(c);
  }
  float& at(int y, int x, int c = 0) noexcept { return data_[index(y, x, c)]; }
  float at(int y, int x, int c = 0) const noexcept { return data_[index(y, x, c)]; }

  std::span<float> pixel(int y, int x) noexcept {
    return {data_.data() + index(y, x), static_cast<std::size_t>(channels_)};
  }
  std::span<const float> pixel(int y, int x) const noexcept {
    return {data_.data() + index(y, x), static_cast<std::size_t>(channels_)};
  }

  bool same_size(const RasterImage& other) const noexcept {
    return height_ == other.height_ && width_ == other.width_;
  }

  RasterImage crop(int y0, int x0, int height, int width) const;
  RasterImage channel(int c) const;

  friend bool operator==(const RasterImage&, const RasterImage&) = default;

 private:
  int height_ = 0;
  int width_ = 0;
  int channels_ = 0;
  std::vector<float> data_;
};

struct Vec2 {
  float u = 0.0f;
  float v = 0.0f;
};

// Per-pixel (u, v) displacement in the field's own pixel units. A target
// pixel x finds its source at x + w(x).
class FlowField {
 public:
  FlowField() = default;
  FlowField(int height, int width, Vec2 fill = {});
  FlowField(int height, int width, std::vector<float> interleaved_uv);

  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }
  bool empty() const noexcept { return uv_.empty(); }

  std::span<float> data() noexcept { return uv_; }
  std::span<const float> data() const noexcept { return uv_; }

  std::size_t index(int y, int x) const noexcept {
    return 2 * (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                static_cast<std::size_t>(x));
  }
  Vec2 at(int y, int x) const noexcept {
    const auto i = index(y, x);
    return {uv_[i], uv_[i + 1]};
  }
  void set(int y, int x, Vec2 w) noexcept {
    const auto i = index(y, x);
    uv_[i] = w.u;
    uv_[i + 1] = w.v;
  }
  float& u(int y, int x) noexcept { return uv_[index(y, x)]; }
  float& v(int y, int x) noexcept { return uv_[index(y, x) + 1]; }

  RasterImage as_raster() const;
  static FlowField from_raster(const RasterImage& two_channel);
  FlowField crop(int y0, int x0, int height, int width) const;

  friend bool operator==(const FlowField&, const FlowField&) = default;

 private:
  int height_ = 0;
  int width_ = 0;
  std::vector<float> uv_;
};

// Per-pixel {0,1} map used for validity masks, change labels and binarized
// predictions.
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int height, int width, bool fill = false);

  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }
  bool empty() const noexcept { return bits_.empty(); }

  std::size_t index(int y, int x) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }
  bool at(int y, int x) const noexcept { return bits_[index(y, x)] != 0; }
  void set(int y, int x, bool value) noexcept { bits_[index(y, x)] = value ? 1 : 0; }

  std::span<const std::uint8_t> data() const noexcept { return bits_; }

  std::size_t count() const noexcept;
  BinaryMask crop(int y0, int x0, int height, int width) const;

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  int height_ = 0;
  int width_ = 0;
  std::vector<std::uint8_t> bits_;
};

}  // namespace e2ecd
