#include "e2ecd/net/heads.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "e2ecd/core/error.hpp"
#include "e2ecd/net/layers.hpp"

namespace e2ecd::net {

FlowField softargmax_flow(const Corr4D& scores, double temperature) {
  if (!(temperature > 0.0)) throw InvalidArgument("softargmax_flow: temperature must be positive");
  if (scores.channels() != 1) throw InvalidShape("softargmax_flow expects a single-channel volume");
  FlowField flow(scores.ht(), scores.wt());
  const std::size_t sources = static_cast<std::size_t>(scores.hs()) * scores.ws();
  std::vector<double> logits(sources);
  for (int i = 0; i < scores.ht(); ++i) {
    for (int j = 0; j < scores.wt(); ++j) {
      const float* row = scores.data().data() + scores.index(i, j, 0, 0);
      double peak = -std::numeric_limits<double>::infinity();
      for (std::size_t s = 0; s < sources; ++s) {
        logits[s] = static_cast<double>(row[s]) / temperature;
        peak = std::max(peak, logits[s]);
      }
      double total = 0.0, su = 0.0, sv = 0.0;
      for (int k = 0; k < scores.hs(); ++k) {
        for (int l = 0; l < scores.ws(); ++l) {
          const double p = std::exp(logits[static_cast<std::size_t>(k) * scores.ws() + l] - peak);
          total += p;
          su += p * (l - j);
          sv += p * (k - i);
        }
      }
      flow.set(i, j, {static_cast<float>(su / total), static_cast<float>(sv / total)});
    }
  }
  return flow;
}

RasterImage peak_score_map(const Corr4D& scores) {
  RasterImage out(scores.ht(), scores.wt(), 1);
  const std::size_t sources = static_cast<std::size_t>(scores.hs()) * scores.ws();
  for (int i = 0; i < scores.ht(); ++i) {
    for (int j = 0; j < scores.wt(); ++j) {
      const float* row = scores.data().data() + scores.index(i, j, 0, 0);
      out.at(i, j) = sources ? *std::max_element(row, row + sources) : 0.0f;
    }
  }
  return out;
}

FlowField head4(const Corr4D& consensus, const WeightStore& weights, const ArchConfig& arch) {
  const std::string ctx = "head4";
  const FlowField initial = softargmax_flow(consensus, arch.effective_temperature());
  const RasterImage features = concat_channels(initial.as_raster(), peak_score_map(consensus));
  const RasterImage hidden = conv2d(features, weights, "head4.refine1", 1, Activation::Relu, ctx);
  const RasterImage residual = conv2d(hidden, weights, "head4.refine2", 1, Activation::None, ctx);
  if (residual.channels() != 2) throw InvalidShape(ctx + ": refinement must output 2 channels");

  FlowField out = initial;
  auto uv = out.data();
  const auto r = residual.data();
  for (std::size_t n = 0; n < uv.size(); ++n) uv[n] += r[n];
  return out;
}

}  // namespace e2ecd::net
