#include "e2ecd/net/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "e2ecd/core/error.hpp"
#include "e2ecd/net/layers.hpp"
#include "e2ecd/simd/kernels.hpp"

namespace e2ecd::net {

namespace {
constexpr double kMinNorm = 1e-12;

std::vector<double> pixel_norms(const RasterImage& f) {
  const auto& k = simd::kernels();
  std::vector<double> norms(f.pixel_count());
  const auto c = static_cast<std::size_t>(f.channels());
  const float* base = f.data().data();
  for (std::size_t p = 0; p < norms.size(); ++p) {
    norms[p] = std::sqrt(k.dot(base + p * c, base + p * c, c));
  }
  return norms;
}
}  // namespace

Corr4D global_correlation(const RasterImage& target, const RasterImage& source) {
  if (target.channels() != source.channels()) {
    throw InvalidShape("global_correlation: channel mismatch (" + std::to_string(target.channels()) +
                       " vs " + std::to_string(source.channels()) + ")");
  }
  const auto& k = simd::kernels();
  const auto tn = pixel_norms(target);
  const auto sn = pixel_norms(source);
  const auto c = static_cast<std::size_t>(target.channels());
  Corr4D out(target.height(), target.width(), source.height(), source.width());
  float* dst = out.data().data();
  const float* tb = target.data().data();
  const float* sb = source.data().data();
  for (std::size_t t = 0; t < tn.size(); ++t) {
    for (std::size_t s = 0; s < sn.size(); ++s, ++dst) {
      if (tn[t] < kMinNorm || sn[s] < kMinNorm) {
        *dst = 0.0f;
        continue;
      }
      const double cosine = k.dot(tb + t * c, sb + s * c, c) / (tn[t] * sn[s]);
      *dst = static_cast<float>(std::clamp(cosine, -1.0, 1.0));
    }
  }
  return out;
}

RasterImage local_correlation(const RasterImage& target, const RasterImage& warped, int radius) {
  if (!target.same_size(warped) || target.channels() != warped.channels()) {
    throw InvalidShape("local_correlation: feature maps differ in shape");
  }
  if (radius < 1) throw InvalidArgument("local_correlation: radius must be >= 1");
  const auto& k = simd::kernels();
  const int side = 2 * radius + 1;
  const auto c = static_cast<std::size_t>(target.channels());
  RasterImage out(target.height(), target.width(), side * side);
  for (int y = 0; y < target.height(); ++y) {
    for (int x = 0; x < target.width(); ++x) {
      const float* t = target.pixel(y, x).data();
      auto dst = out.pixel(y, x);
      for (int dy = -radius; dy <= radius; ++dy) {
        const int sy = y + dy;
        for (int dx = -radius; dx <= radius; ++dx) {
          const int sx = x + dx;
          float v = 0.0f;
          if (sy >= 0 && sy < target.height() && sx >= 0 && sx < target.width()) {
            v = static_cast<float>(k.dot(t, warped.pixel(sy, sx).data(), c));
          }
          dst[static_cast<std::size_t>((dy + radius) * side + dx + radius)] = v;
        }
      }
    }
  }
  return out;
}

Corr4D mutual_matching(const Corr4D& corr) {
  if (corr.channels() != 1) throw InvalidShape("mutual_matching expects a single-channel volume");
  const std::size_t targets = static_cast<std::size_t>(corr.ht()) * corr.wt();
  const std::size_t sources = static_cast<std::size_t>(corr.hs()) * corr.ws();
  const auto in = corr.data();

  // Max over targets for each source position, and over sources for each target.
  std::vector<float> source_max(sources, 0.0f);
  std::vector<float> target_max(targets, 0.0f);
  for (std::size_t t = 0; t < targets; ++t) {
    for (std::size_t s = 0; s < sources; ++s) {
      const float v = std::max(in[t * sources + s], 0.0f);
      source_max[s] = std::max(source_max[s], v);
      target_max[t] = std::max(target_max[t], v);
    }
  }

  Corr4D out(corr.ht(), corr.wt(), corr.hs(), corr.ws());
  auto dst = out.data();
  for (std::size_t t = 0; t < targets; ++t) {
    for (std::size_t s = 0; s < sources; ++s) {
      const double v = std::max(in[t * sources + s], 0.0f);
      const double rs = source_max[s] > 0.0f ? v / source_max[s] : 0.0;
      const double rt = target_max[t] > 0.0f ? v / target_max[t] : 0.0;
      dst[t * sources + s] = static_cast<float>(rs * rt * v);
    }
  }
  return out;
}

Corr4D consensus_network(const Corr4D& input, const WeightStore& weights) {
  const std::string ctx = "neighborhood consensus";
  const Tensor& w1 = weights.get("consensus.conv1.weight", ctx);
  const Tensor& w2 = weights.get("consensus.conv2.weight", ctx);
  const Tensor& w3 = weights.get("consensus.conv3.weight", ctx);
  for (const Tensor* w : {&w1, &w2, &w3}) {
    if (w->shape.size() != 6) throw InvalidShape(ctx + ": conv4d kernels must have rank 6");
  }
  Corr4D h = conv4d(input, w1.values, static_cast<int>(w1.shape[5]), Activation::Relu);
  h = conv4d(h, w2.values, static_cast<int>(w2.shape[5]), Activation::Relu);
  return conv4d(h, w3.values, static_cast<int>(w3.shape[5]), Activation::None);
}

Corr4D neighborhood_consensus(const Corr4D& matched, const WeightStore& weights) {
  Corr4D forward = consensus_network(matched, weights);
  const Corr4D backward = consensus_network(matched.transposed(), weights).transposed();
  auto dst = forward.data();
  const auto src = backward.data();
  for (std::size_t n = 0; n < dst.size(); ++n) dst[n] += src[n];
  return forward;
}

}  // namespace e2ecd::net
