#include "e2ecd/net/model.hpp"

#include <string>

#include "e2ecd/core/error.hpp"
#include "e2ecd/core/sampling.hpp"
#include "e2ecd/net/correlation.hpp"
#include "e2ecd/net/heads.hpp"
#include "e2ecd/net/layers.hpp"
#include "e2ecd/simd/kernels.hpp"

namespace e2ecd::net {

ReferenceExtractor::ReferenceExtractor(const WeightStore& weights, const ArchConfig& arch)
    : weights_(weights), arch_(arch) {
  validate(arch_);
}

FeaturePyramid ReferenceExtractor::extract(const RasterImage& image) const {
  if (image.height() == 0 || image.width() == 0 || image.height() % 32 != 0 ||
      image.width() % 32 != 0) {
    throw InvalidShape("feature extraction needs dimensions divisible by 32, got " +
                       std::to_string(image.height()) + "x" + std::to_string(image.width()));
  }
  RasterImage input = image;
  if (image.channels() == 1 && arch_.input_channels != 1) {
    input = RasterImage(image.height(), image.width(), arch_.input_channels);
    for (int y = 0; y < image.height(); ++y) {
      for (int x = 0; x < image.width(); ++x) {
        for (int c = 0; c < arch_.input_channels; ++c) input.at(y, x, c) = image.at(y, x);
      }
    }
  } else if (image.channels() != arch_.input_channels) {
    throw InvalidShape("image has " + std::to_string(image.channels()) + " channels, backbone expects " +
                       std::to_string(arch_.input_channels));
  }

  const std::string ctx = "backbone";
  FeaturePyramid pyramid;
  RasterImage x = conv2d(input, weights_, "backbone.stem", 2, Activation::Relu, ctx);
  for (int s = 0; s < 4; ++s) {
    x = conv2d(x, weights_, "backbone.stage" + std::to_string(s + 1), 2, Activation::Relu, ctx);
    pyramid.levels[static_cast<std::size_t>(s)] = x;
  }
  return pyramid;
}

FeaturePyramid extract_features(const RasterImage& image, const WeightStore& weights,
                                const ArchConfig& arch) {
  return ReferenceExtractor(weights, arch).extract(image);
}

LevelOutput l_module_forward(const RasterImage& source_features, const RasterImage& target_features,
                             const FlowField& coarser_flow, const WeightStore& weights,
                             const ArchConfig& arch, int level) {
  if (level < 1 || level > 3) throw InvalidArgument("local modules exist for levels 1..3 only");
  const std::string ctx = "level " + std::to_string(level);
  if (!source_features.same_size(target_features) ||
      source_features.channels() != target_features.channels()) {
    throw InvalidShape(ctx + ": source and target features differ in shape");
  }

  LevelOutput out;
  out.upsampled_prior = upsample_flow(coarser_flow, 2);
  if (out.upsampled_prior.height() != source_features.height() ||
      out.upsampled_prior.width() != source_features.width()) {
    throw InvalidShape(ctx + ": upsampled flow does not match the feature map size");
  }
  const RasterImage warped = warp_by_flow(source_features, out.upsampled_prior);

  const std::string prefix = "level" + std::to_string(level);
  const RasterImage corr = local_correlation(target_features, warped, arch.radius);
  RasterImage h = concat_channels(corr, out.upsampled_prior.as_raster());
  h = conv2d(h, weights, prefix + ".flow_head.conv1", 1, Activation::Relu, ctx);
  h = conv2d(h, weights, prefix + ".flow_head.conv2", 1, Activation::Relu, ctx);
  const RasterImage residual = conv2d(h, weights, prefix + ".flow_head.conv3", 1, Activation::None, ctx);
  if (residual.channels() != 2) throw InvalidShape(ctx + ": flow head must output 2 channels");
  out.flow = out.upsampled_prior;
  auto uv = out.flow.data();
  for (std::size_t n = 0; n < uv.size(); ++n) uv[n] += residual.data()[n];

  RasterImage diff(warped.height(), warped.width(), warped.channels());
  simd::kernels().abs_diff(diff.data().data(), warped.data().data(), target_features.data().data(),
                           diff.data().size());
  RasterImage c = conv2d(diff, weights, prefix + ".cd_head.conv1", 1, Activation::Relu, ctx);
  c = conv2d(c, weights, prefix + ".cd_head.conv2", 1, Activation::Relu, ctx);
  c = conv2d(c, weights, prefix + ".cd_head.conv3", 1, Activation::None, ctx);
  out.change = ChangeProbMap::from_logits(c);
  return out;
}

ForwardResult e2ecd_forward(const RasterImage& source, const RasterImage& target,
                            const WeightStore& weights, const ArchConfig& arch,
                            const FeatureExtractor* extractor) {
  if (!source.same_size(target)) throw InvalidShape("source and target images differ in size");
  const ReferenceExtractor fallback(weights, arch);
  const FeatureExtractor& backbone = extractor ? *extractor : fallback;
  const FeaturePyramid fs = backbone.extract(source);
  const FeaturePyramid ft = backbone.extract(target);

  ForwardResult r;
  const Corr4D corr = global_correlation(ft.level(4), fs.level(4));
  const Corr4D consensus = neighborhood_consensus(mutual_matching(corr), weights);
  r.flows[3] = head4(consensus, weights, arch);

  for (int level = 3; level >= 1; --level) {
    LevelOutput lo = l_module_forward(fs.level(level), ft.level(level),
                                      r.flows[static_cast<std::size_t>(level)], weights, arch, level);
    r.flows[static_cast<std::size_t>(level - 1)] = std::move(lo.flow);
    r.probs[static_cast<std::size_t>(level - 1)] = std::move(lo.change);
  }

  r.flow = upsample_flow(r.flows[0], 4);
  r.change = ChangeProbMap::renormalized(upsample_bilinear(r.probs[0].raster(), 4));
  return r;
}

}  // namespace e2ecd::net
