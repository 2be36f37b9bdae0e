#pragma once

#include <cstdint>

#include "e2ecd/core/affine.hpp"

namespace e2ecd::data {

// Ranges for the random viewpoint change applied to the pre-event image.
struct AffineSamplingConfig {
  double max_rotation_deg = 25.0;
  double scale_min = 0.8;
  double scale_max = 1.25;
  double max_translation_frac = 0.1;  // of min(H, W), per axis
  double max_shear_deg = 10.0;
  std::uint64_t seed = 0;
};

void validate(const AffineSamplingConfig& config);

struct AffineParameters {
  double rotation_deg = 0.0;
  double scale = 1.0;
  double shear_deg = 0.0;
  double tx_frac = 0.0;
  double ty_frac = 0.0;
};

// Raw parameter draw, a pure function of (config.seed, index, attempt).
AffineParameters draw_affine_parameters(const AffineSamplingConfig& config, std::uint64_t index,
                                        std::uint32_t attempt = 0);

// Rotation, shear and isotropic scale about the image center, then
// translation: A(y) = L (y - c) + c + t with L = s R(theta) Sh(phi). The
// result maps unregistered-source coordinates to registered ones.
AffineTransform2D compose_affine(const AffineParameters& params, int height, int width);

// Deterministic in (config, index, height, width). Degenerate draws are
// redrawn internally.
AffineTransform2D sample_affine(const AffineSamplingConfig& config, std::uint64_t index,
                                int height, int width);

}  // namespace e2ecd::data
