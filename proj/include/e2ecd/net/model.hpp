#pragma once

#include <array>
#include <memory>

#include "e2ecd/core/raster.hpp"
#include "e2ecd/net/arch.hpp"
#include "e2ecd/net/tensor.hpp"
#include "e2ecd/net/weights.hpp"

namespace e2ecd::net {

// levels[0..3] hold scales 1/4, 1/8, 1/16, 1/32 (levels 1..4).
struct FeaturePyramid {
  std::array<RasterImage, 4> levels;

  const RasterImage& level(int i) const { return levels.at(static_cast<std::size_t>(i - 1)); }
};

// Backbone interface; source and target go through the same instance.
class FeatureExtractor {
 public:
  virtual ~FeatureExtractor() = default;
  virtual FeaturePyramid extract(const RasterImage& image) const = 0;
};

// Stride-2 3x3 conv stem, then four stride-2 3x3 conv + ReLU stages producing
// arch.channels at 1/4 .. 1/32. Single-channel input is replicated to
// arch.input_channels.
class ReferenceExtractor final : public FeatureExtractor {
 public:
  ReferenceExtractor(const WeightStore& weights, const ArchConfig& arch);
  FeaturePyramid extract(const RasterImage& image) const override;

 private:
  const WeightStore& weights_;
  ArchConfig arch_;
};

// H and W must be multiples of 32 (InvalidShape otherwise).
FeaturePyramid extract_features(const RasterImage& image, const WeightStore& weights,
                                const ArchConfig& arch);

struct LevelOutput {
  FlowField flow;             // this level's flow
  ChangeProbMap change;
  FlowField upsampled_prior;  // coarser flow upsampled x2, before the residual
};

// Local module of pyramid level i in {1, 2, 3}: upsample the coarser flow,
// warp the source features, local correlation, residual flow head, and the
// change head on |warped source - target|.
LevelOutput l_module_forward(const RasterImage& source_features, const RasterImage& target_features,
                             const FlowField& coarser_flow, const WeightStore& weights,
                             const ArchConfig& arch, int level);

struct ForwardResult {
  FlowField flow;                    // full resolution
  ChangeProbMap change;              // full resolution
  std::array<FlowField, 4> flows;    // pyramid levels 1..4 at index 0..3
  std::array<ChangeProbMap, 3> probs;  // levels 1..3 at index 0..2
};

// Global module on level 4, then local modules 3, 2, 1, then bilinear
// upsampling of the level-1 flow and change map by 4. `extractor` defaults to ReferenceExtractor.
ForwardResult e2ecd_forward(const RasterImage& source, const RasterImage& target,
                            const WeightStore& weights, const ArchConfig& arch,
                            const FeatureExtractor* extractor = nullptr);

}  // namespace e2ecd::net
