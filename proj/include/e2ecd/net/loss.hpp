#pragma once

#include <span>

#include "e2ecd/core/raster.hpp"
#include "e2ecd/net/tensor.hpp"

namespace e2ecd::net {

inline constexpr double kLogClamp = 1e-7;

// Ground truth reduced to a coarser grid: labels by max-pooling (any
// positive wins), validity by min-pooling (all must be valid). `factor` must
// divide both dimensions.
BinaryMask max_pool(const BinaryMask& mask, int factor);
BinaryMask min_pool(const BinaryMask& mask, int factor);

// Multi-scale class-balanced cross entropy. Per level, with beta the
// fraction of valid negatives:
//   -sum_valid [beta y log p_c + (1 - beta)(1 - y) log p_u] / #valid
// Levels without valid pixels are skipped; the result is the mean over the
// remaining levels (0 if none).
double class_balanced_ce(std::span<const ChangeProbMap> levels, const BinaryMask& gt,
                         const BinaryMask& valid);

// Mean endpoint error over valid pixels. Throws UndefinedMetric on an empty
// mask.
double flow_epe(const FlowField& flow, const FlowField& gt, const BinaryMask& valid);

}  // namespace e2ecd::net
