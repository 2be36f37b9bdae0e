#include <algorithm>
#include <cmath>
#include <string>

#include "e2ecd/core/error.hpp"
#include "e2ecd/net/tensor.hpp"

namespace e2ecd::net {

Corr4D::Corr4D(int ht, int wt, int hs, int ws, int channels, float fill)
    : ht_(ht), wt_(wt), hs_(hs), ws_(ws), channels_(channels) {
  if (ht < 0 || wt < 0 || hs < 0 || ws < 0 || channels < 1) {
    throw InvalidShape("invalid Corr4D dimensions");
  }
  data_.assign(positions() * static_cast<std::size_t>(channels), fill);
}

Corr4D Corr4D::transposed() const {
  Corr4D out(hs_, ws_, ht_, wt_, channels_);
  for (int i = 0; i < ht_; ++i) {
    for (int j = 0; j < wt_; ++j) {
      for (int k = 0; k < hs_; ++k) {
        for (int l = 0; l < ws_; ++l) {
          const float* src = data_.data() + index(i, j, k, l);
          std::copy_n(src, channels_, out.data_.data() + out.index(k, l, i, j));
        }
      }
    }
  }
  return out;
}

ChangeProbMap::ChangeProbMap(RasterImage probabilities) : probs_(std::move(probabilities)) {
  if (probs_.channels() != 2) {
    throw InvalidShape("change probability map needs 2 channels, got " +
                       std::to_string(probs_.channels()));
  }
}

ChangeProbMap ChangeProbMap::from_logits(const RasterImage& logits) {
  if (logits.channels() != 2) throw InvalidShape("change logits need 2 channels");
  RasterImage probs(logits.height(), logits.width(), 2);
  for (int y = 0; y < logits.height(); ++y) {
    for (int x = 0; x < logits.width(); ++x) {
      const double a = logits.at(y, x, 0);
      const double b = logits.at(y, x, 1);
      const double m = std::max(a, b);
      const double ea = std::exp(a - m);
      const double eb = std::exp(b - m);
      probs.at(y, x, 0) = static_cast<float>(ea / (ea + eb));
      probs.at(y, x, 1) = static_cast<float>(eb / (ea + eb));
    }
  }
  return ChangeProbMap(std::move(probs));
}

ChangeProbMap ChangeProbMap::renormalized(RasterImage probabilities) {
  if (probabilities.channels() != 2) throw InvalidShape("change probabilities need 2 channels");
  for (int y = 0; y < probabilities.height(); ++y) {
    for (int x = 0; x < probabilities.width(); ++x) {
      const double a = std::max(0.0f, probabilities.at(y, x, 0));
      const double b = std::max(0.0f, probabilities.at(y, x, 1));
      const double sum = a + b;
      probabilities.at(y, x, 0) = sum > 0.0 ? static_cast<float>(a / sum) : 0.5f;
      probabilities.at(y, x, 1) = sum > 0.0 ? static_cast<float>(b / sum) : 0.5f;
    }
  }
  return ChangeProbMap(std::move(probabilities));
}

BinaryMask ChangeProbMap::binarize(double threshold) const {
  BinaryMask out(height(), width());
  for (int y = 0; y < height(); ++y) {
    for (int x = 0; x < width(); ++x) out.set(y, x, p_changed(y, x) >= threshold);
  }
  return out;
}

}  // namespace e2ecd::net
