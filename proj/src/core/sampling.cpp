#include "e2ecd/core/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "e2ecd/core/error.hpp"

namespace e2ecd {

void bilinear_sample(const RasterImage& image, double x, double y, std::span<float> out) {
  const int channels = image.channels();
  std::fill(out.begin(), out.end(), 0.0f);
  const int width = image.width();
  const int height = image.height();
  // Anything further out than one pixel has no in-bounds corner.
  if (!(x > -1.0 && y > -1.0 && x < width && y < height)) return;

  const double fx0 = std::floor(x);
  const double fy0 = std::floor(y);
  const int x0 = static_cast<int>(fx0);
  const int y0 = static_cast<int>(fy0);
  const double ax = x - fx0;
  const double ay = y - fy0;
  const double weights[4] = {(1.0 - ax) * (1.0 - ay), ax * (1.0 - ay), (1.0 - ax) * ay, ax * ay};
  const int xs[4] = {x0, x0 + 1, x0, x0 + 1};
  const int ys[4] = {y0, y0, y0 + 1, y0 + 1};

  for (int c = 0; c < channels; ++c) {
    double acc = 0.0;
    for (int k = 0; k < 4; ++k) {
      if (xs[k] < 0 || ys[k] < 0 || xs[k] >= width || ys[k] >= height) continue;
      acc += weights[k] * static_cast<double>(image.at(ys[k], xs[k], c));
    }
    out[static_cast<std::size_t>(c)] = static_cast<float>(acc);
  }
}

std::vector<float> bilinear_sample(const RasterImage& image, double x, double y) {
  std::vector<float> out(static_cast<std::size_t>(image.channels()));
  bilinear_sample(image, x, y, out);
  return out;
}

RasterImage warp_by_flow(const RasterImage& source, const FlowField& flow) {
  if (source.height() != flow.height() || source.width() != flow.width()) {
    throw InvalidArgument("warp_by_flow: source is " + std::to_string(source.height()) + "x" +
                          std::to_string(source.width()) + " but flow is " +
                          std::to_string(flow.height()) + "x" + std::to_string(flow.width()));
  }
  RasterImage out(source.height(), source.width(), source.channels());
  for (int y = 0; y < source.height(); ++y) {
    for (int x = 0; x < source.width(); ++x) {
      const Vec2 w = flow.at(y, x);
      bilinear_sample(source, static_cast<double>(x) + static_cast<double>(w.u),
                      static_cast<double>(y) + static_cast<double>(w.v), out.pixel(y, x));
    }
  }
  return out;
}

namespace {

struct Tap {
  int lo;
  int hi;
  double frac;
};

// Corner-aligned source coordinate for each output index along one axis.
std::vector<Tap> aligned_taps(int in_size, int out_size) {
  std::vector<Tap> taps(static_cast<std::size_t>(out_size));
  for (int o = 0; o < out_size; ++o) {
    double pos = 0.0;
    if (out_size > 1) {
      pos = static_cast<double>(o) * static_cast<double>(in_size - 1) /
            static_cast<double>(out_size - 1);
    }
    const int lo = std::min(static_cast<int>(std::floor(pos)), in_size - 1);
    const int hi = std::min(lo + 1, in_size - 1);
    taps[static_cast<std::size_t>(o)] = {lo, hi, pos - lo};
  }
  return taps;
}

RasterImage upsample_scaled(const RasterImage& map, int factor, double value_scale) {
  if (factor < 1) {
    throw InvalidArgument("upsampling factor must be >= 1, got " + std::to_string(factor));
  }
  const int out_h = map.height() * factor;
  const int out_w = map.width() * factor;
  RasterImage out(out_h, out_w, map.channels());
  if (map.empty()) return out;
  const auto ty = aligned_taps(map.height(), out_h);
  const auto tx = aligned_taps(map.width(), out_w);
  for (int oy = 0; oy < out_h; ++oy) {
    const Tap& vy = ty[static_cast<std::size_t>(oy)];
    for (int ox = 0; ox < out_w; ++ox) {
      const Tap& vx = tx[static_cast<std::size_t>(ox)];
      for (int c = 0; c < map.channels(); ++c) {
        const double top = (1.0 - vx.frac) * map.at(vy.lo, vx.lo, c) + vx.frac * map.at(vy.lo, vx.hi, c);
        const double bottom = (1.0 - vx.frac) * map.at(vy.hi, vx.lo, c) + vx.frac * map.at(vy.hi, vx.hi, c);
        const double value = (1.0 - vy.frac) * top + vy.frac * bottom;
        out.at(oy, ox, c) = static_cast<float>(value) * static_cast<float>(value_scale);
      }
    }
  }
  return out;
}

}  // namespace

RasterImage upsample_bilinear(const RasterImage& map, int factor) {
  return upsample_scaled(map, factor, 1.0);
}

FlowField upsample_flow(const FlowField& flow, int factor) {
  return FlowField::from_raster(upsample_scaled(flow.as_raster(), factor, factor));
}

}  // namespace e2ecd
