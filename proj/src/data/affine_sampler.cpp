#include "e2ecd/data/affine_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "e2ecd/core/error.hpp"

namespace e2ecd::data {
namespace {

// mt19937_64 and seed_seq are fully specified by the standard; the mapping to
// [0,1) is done by hand because the distributions are not.
class UnitStream {
 public:
  UnitStream(std::uint64_t seed, std::uint64_t index, std::uint32_t attempt) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                      attempt};
    engine_.seed(seq);
  }
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + next() * (hi - lo); }

 private:
  std::mt19937_64 engine_;
};

double radians(double deg) { return deg * std::numbers::pi / 180.0; }

}  // namespace

void validate(const AffineSamplingConfig& c) {
  if (!(c.max_rotation_deg >= 0.0) || !(c.max_translation_frac >= 0.0) ||
      !(c.max_shear_deg >= 0.0) || !(c.max_shear_deg < 90.0)) {
    throw InvalidArgument("affine ranges must be non-negative (shear below 90 degrees)");
  }
  if (!(c.scale_min > 0.0) || !(c.scale_min <= c.scale_max)) {
    throw InvalidArgument("affine scale range must satisfy 0 < min <= max");
  }
  if (!(c.scale_max * c.scale_max > kMinAffineDeterminant)) {
    throw InvalidArgument("affine scale range admits only singular transforms");
  }
}

AffineParameters draw_affine_parameters(const AffineSamplingConfig& c, std::uint64_t index,
                                        std::uint32_t attempt) {
  UnitStream rng(c.seed, index, attempt);
  AffineParameters p;
  p.rotation_deg = rng.uniform(-c.max_rotation_deg, c.max_rotation_deg);
  p.scale = rng.uniform(c.scale_min, c.scale_max);
  p.shear_deg = rng.uniform(-c.max_shear_deg, c.max_shear_deg);
  p.tx_frac = rng.uniform(-c.max_translation_frac, c.max_translation_frac);
  p.ty_frac = rng.uniform(-c.max_translation_frac, c.max_translation_frac);
  return p;
}

AffineTransform2D compose_affine(const AffineParameters& p, int height, int width) {
  const double theta = radians(p.rotation_deg);
  const double cs = std::cos(theta);
  const double sn = std::sin(theta);
  const double k = std::tan(radians(p.shear_deg));
  // s * R * [1 k; 0 1]
  const double a = p.scale * cs;
  const double b = p.scale * (cs * k - sn);
  const double d = p.scale * sn;
  const double e = p.scale * (sn * k + cs);
  const double cx = (width - 1) / 2.0;
  const double cy = (height - 1) / 2.0;
  const double span = std::min(height, width);
  const double tx = p.tx_frac * span;
  const double ty = p.ty_frac * span;
  return {{a, b, cx + tx - (a * cx + b * cy), d, e, cy + ty - (d * cx + e * cy)}};
}

AffineTransform2D sample_affine(const AffineSamplingConfig& config, std::uint64_t index,
                                int height, int width) {
  validate(config);
  for (std::uint32_t attempt = 0;; ++attempt) {
    const auto t = compose_affine(draw_affine_parameters(config, index, attempt), height, width);
    if (std::abs(t.determinant()) > kMinAffineDeterminant) return t;
  }
}

}  // namespace e2ecd::data
