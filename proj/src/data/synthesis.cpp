#include "e2ecd/data/synthesis.hpp"

#include <algorithm>

#include "e2ecd/core/error.hpp"
#include "e2ecd/core/sampling.hpp"
#include "e2ecd/data/rasterize.hpp"

namespace e2ecd::data {

FlowField affine_flow_field(const AffineTransform2D& affine, int height, int width) {
  const AffineTransform2D inverse = affine_invert(affine);
  FlowField flow(height, width);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const Point2 src = affine_apply(inverse, x, y);
      flow.set(y, x, {static_cast<float>(src.x - x), static_cast<float>(src.y - y)});
    }
  }
  return flow;
}

BinaryMask affine_validity_mask(const AffineTransform2D& affine, int height, int width) {
  const AffineTransform2D inverse = affine_invert(affine);
  BinaryMask mask(height, width);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const Point2 src = affine_apply(inverse, x, y);
      mask.set(y, x, src.x >= 0.0 && src.y >= 0.0 && src.x <= width - 1 && src.y <= height - 1);
    }
  }
  return mask;
}

E2ESample synthesize_pair(const RegisteredPair& pair, const AffineTransform2D& affine) {
  validate(pair);
  const int height = pair.pre_image.height();
  const int width = pair.pre_image.width();

  E2ESample s;
  s.id = pair.id;
  s.event_name = pair.event_name;
  s.affine = affine;
  s.gt_flow = affine_flow_field(affine, height, width);
  s.validity_mask = affine_validity_mask(affine, height, width);

  s.source_image = RasterImage(height, width, pair.pre_image.channels());
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const Point2 at = affine_apply(affine, x, y);
      bilinear_sample(pair.pre_image, at.x, at.y, s.source_image.pixel(y, x));
    }
  }
  s.target_image = pair.post_image;
  s.change_map = derive_change_map(pair.pre_buildings, pair.post_buildings, height, width);
  return s;
}

std::vector<E2ESample> filter_pairs(std::vector<E2ESample> samples, std::size_t min_positive) {
  std::erase_if(samples, [&](const E2ESample& s) { return s.valid_positives() < min_positive; });
  return samples;
}

}  // namespace e2ecd::data
