#pragma once

#include "e2ecd/core/raster.hpp"
#include "e2ecd/net/tensor.hpp"
#include "e2ecd/net/weights.hpp"

namespace e2ecd::net {

// Cosine similarity between every target feature (i, j) and every source
// feature (k, l). Vectors with norm below 1e-12 correlate to 0.
Corr4D global_correlation(const RasterImage& target_features, const RasterImage& source_features);

// Dot products between target(x) and warped_source(x + d) for |d|_inf <= radius.
// Channel (dy + r) * (2r + 1) + (dx + r) holds displacement (dx, dy); samples
// outside the grid give 0. Features are used unnormalized.
RasterImage local_correlation(const RasterImage& target_features,
                              const RasterImage& warped_source_features, int radius);

// Clamps at zero, then scales each entry by its ratios to the maxima of its
// source slice (over all targets) and target slice (over all sources). Zero
// maxima give zero ratios.
Corr4D mutual_matching(const Corr4D& correlation);

// Three-layer 4D convolution stack N (ReLU between, no bias), symmetrised as
// N(C) + N(C^T)^T so swapping the input images transposes the output.
Corr4D neighborhood_consensus(const Corr4D& matched, const WeightStore& weights);

// The stack N alone.
Corr4D consensus_network(const Corr4D& input, const WeightStore& weights);

}  // namespace e2ecd::net
