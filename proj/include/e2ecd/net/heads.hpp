#pragma once

#include "e2ecd/core/raster.hpp"
#include "e2ecd/net/arch.hpp"
#include "e2ecd/net/tensor.hpp"
#include "e2ecd/net/weights.hpp"

namespace e2ecd::net {

// Expected displacement under softmax_{k,l}(c_ijkl / temperature):
// flow(i, j) = sum p_kl * (l - j, k - i), in level-4 pixels.
FlowField softargmax_flow(const Corr4D& scores, double temperature);

// max_{k,l} c_ijkl for every target position.
RasterImage peak_score_map(const Corr4D& scores);

// Coarsest-level flow: soft-argmax initialisation plus a two-layer 3x3 conv
// refinement of (u, v, peak score). The refinement's last layer starts at
// zero, so a fresh store returns the soft-argmax flow unchanged.
FlowField head4(const Corr4D& consensus, const WeightStore& weights, const ArchConfig& arch);

}  // namespace e2ecd::net
