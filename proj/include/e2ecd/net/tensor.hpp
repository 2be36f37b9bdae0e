#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "e2ecd/core/raster.hpp"

namespace e2ecd::net {

// 4D correlation volume between a target grid (i, j) and a source grid
// (k, l), with an optional trailing channel axis for the consensus stack.
// Row-major (i, j, k, l, c).
class Corr4D {
 public:
  Corr4D() = default;
  Corr4D(int ht, int wt, int hs, int ws, int channels = 1, float fill = 0.0f);

  int ht() const noexcept { return ht_; }
  int wt() const noexcept { return wt_; }
  int hs() const noexcept { return hs_; }
  int ws() const noexcept { return ws_; }
  int channels() const noexcept { return channels_; }
  std::size_t positions() const noexcept {
    return static_cast<std::size_t>(ht_) * wt_ * hs_ * ws_;
  }

  std::size_t index(int i, int j, int k, int l, int c = 0) const noexcept {
    return ((((static_cast<std::size_t>(i) * wt_ + j) * hs_ + k) * ws_ + l) *
            static_cast<std::size_t>(channels_)) +
           static_cast<std::size_t>(c);
  }
  float& at(int i, int j, int k, int l, int c = 0) noexcept { return data_[index(i, j, k, l, c)]; }
  float at(int i, int j, int k, int l, int c = 0) const noexcept {
    return data_[index(i, j, k, l, c)];
  }

  std::span<float> data() noexcept { return data_; }
  std::span<const float> data() const noexcept { return data_; }

  bool same_dims(const Corr4D& o) const noexcept {
    return ht_ == o.ht_ && wt_ == o.wt_ && hs_ == o.hs_ && ws_ == o.ws_ && channels_ == o.channels_;
  }

  // (X^T)_{ijkl} = X_{klij}, channels untouched.
  Corr4D transposed() const;

  friend bool operator==(const Corr4D&, const Corr4D&) = default;

 private:
  int ht_ = 0, wt_ = 0, hs_ = 0, ws_ = 0, channels_ = 0;
  std::vector<float> data_;
};

// Two-channel (p_unchanged, p_changed) map; rows sum to one.
class ChangeProbMap {
 public:
  ChangeProbMap() = default;
  // Takes ownership of a 2-channel raster of probabilities.
  explicit ChangeProbMap(RasterImage probabilities);

  static ChangeProbMap from_logits(const RasterImage& logits);
  // Divides each pixel by its channel sum; pixels summing to zero become
  // (0.5, 0.5).
  static ChangeProbMap renormalized(RasterImage probabilities);

  int height() const noexcept { return probs_.height(); }
  int width() const noexcept { return probs_.width(); }
  float p_unchanged(int y, int x) const noexcept { return probs_.at(y, x, 0); }
  float p_changed(int y, int x) const noexcept { return probs_.at(y, x, 1); }
  const RasterImage& raster() const noexcept { return probs_; }

  // p_changed >= threshold
  BinaryMask binarize(double threshold = 0.5) const;

  friend bool operator==(const ChangeProbMap&, const ChangeProbMap&) = default;

 private:
  RasterImage probs_;
};

}  // namespace e2ecd::net
