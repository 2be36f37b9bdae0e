#include "e2ecd/data/rasterize.hpp"

#include <algorithm>
#include <cmath>

#include "e2ecd/core/error.hpp"

namespace e2ecd::data {

LabelMap rasterize_polygons(std::span<const BuildingPolygon> polygons, int height, int width) {
  if (height < 1 || width < 1) throw InvalidArgument("rasterize_polygons: empty grid");
  LabelMap map{height, width,
               std::vector<std::int32_t>(static_cast<std::size_t>(height) * width, 0)};
  std::vector<double> crossings;

  for (std::size_t p = 0; p < polygons.size(); ++p) {
    const auto& v = polygons[p].vertices;
    if (v.size() < 3) continue;
    const auto label = static_cast<std::int32_t>(p + 1);
    double min_y = v[0].y;
    double max_y = min_y;
    for (const auto& q : v) {
      min_y = std::min(min_y, q.y);
      max_y = std::max(max_y, q.y);
    }
    const int row_lo = std::max(0, static_cast<int>(std::floor(min_y - 0.5)));
    const int row_hi = std::min(height - 1, static_cast<int>(std::ceil(max_y - 0.5)));

    for (int row = row_lo; row <= row_hi; ++row) {
      const double py = row + 0.5;
      crossings.clear();
      for (std::size_t a = 0, b = v.size() - 1; a < v.size(); b = a++) {
        const Point2& pa = v[a];
        const Point2& pb = v[b];
        if ((pa.y > py) != (pb.y > py)) {
          crossings.push_back((pb.x - pa.x) * (py - pa.y) / (pb.y - pa.y) + pa.x);
        }
      }
      if (crossings.empty()) continue;
      std::sort(crossings.begin(), crossings.end());
      // A center px is inside iff an odd number of crossings lie strictly
      // to its right.
      std::size_t right = 0;  // first crossing with x > px
      for (int col = 0; col < width; ++col) {
        const double px = col + 0.5;
        while (right < crossings.size() && !(crossings[right] > px)) ++right;
        if ((crossings.size() - right) % 2 == 1) {
          map.labels[static_cast<std::size_t>(row) * width + col] = label;
        }
      }
    }
  }
  return map;
}

BinaryMask derive_change_map(std::span<const BuildingPolygon> pre,
                             std::span<const BuildingPolygon> post, int height, int width) {
  const LabelMap pre_map = rasterize_polygons(pre, height, width);
  const LabelMap post_map = rasterize_polygons(post, height, width);
  BinaryMask changed(height, width);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const bool in_pre = pre_map.at(y, x) != 0;
      const std::int32_t post_label = post_map.at(y, x);
      const bool in_post = post_label != 0;
      bool c = in_pre != in_post;
      if (in_pre && in_post) {
        c = post[static_cast<std::size_t>(post_label - 1)].damage != DamageClass::NoDamage;
      }
      changed.set(y, x, c);
    }
  }
  return changed;
}

}  // namespace e2ecd::data
