#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "e2ecd/core/affine.hpp"
#include "e2ecd/data/types.hpp"

namespace e2ecd::data {

// Ground-truth flow of a resampling transform: w(x) = A^-1(x) - x, so that
// x + w(x) lands on the unregistered source pixel showing registered x.
FlowField affine_flow_field(const AffineTransform2D& affine, int height, int width);

// 1 where A^-1(x) lies inside [0, W-1] x [0, H-1].
BinaryMask affine_validity_mask(const AffineTransform2D& affine, int height, int width);

// Resamples the pre-event image through `affine` (source(y) = pre(A y),
// zero outside), attaches the analytic flow, validity mask and the change map
// derived on the registered frame.
E2ESample synthesize_pair(const RegisteredPair& pair, const AffineTransform2D& affine);

// Keeps samples with at least `min_positive` changed pixels inside the
// validity mask.
std::vector<E2ESample> filter_pairs(std::vector<E2ESample> samples, std::size_t min_positive = 100);

}  // namespace e2ecd::data
