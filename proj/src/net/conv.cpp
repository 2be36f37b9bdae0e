#include <algorithm>
#include <string>
#include <vector>

#include "e2ecd/core/error.hpp"
#include "e2ecd/net/layers.hpp"
#include "e2ecd/simd/kernels.hpp"

namespace e2ecd::net {

RasterImage conv2d(const RasterImage& input, std::span<const float> kernel,
                   std::span<const float> bias, int cout, int stride, Activation act) {
  const int cin = input.channels();
  if (cout < 1 || stride < 1) throw InvalidArgument("conv2d: bad output channels or stride");
  if (kernel.size() != static_cast<std::size_t>(9) * cin * cout) {
    throw InvalidShape("conv2d: kernel has " + std::to_string(kernel.size()) + " values, expected 3x3x" +
                       std::to_string(cin) + "x" + std::to_string(cout));
  }
  if (!bias.empty() && bias.size() != static_cast<std::size_t>(cout)) {
    throw InvalidShape("conv2d: bias length does not match output channels");
  }
  const int out_h = (input.height() - 1) / stride + 1;
  const int out_w = (input.width() - 1) / stride + 1;
  RasterImage out(input.height() == 0 ? 0 : out_h, input.width() == 0 ? 0 : out_w, cout);
  const auto& k = simd::kernels();
  std::vector<double> acc(static_cast<std::size_t>(cout));
  const std::size_t tap_stride = static_cast<std::size_t>(cin) * cout;

  for (int oy = 0; oy < out.height(); ++oy) {
    for (int ox = 0; ox < out.width(); ++ox) {
      for (int o = 0; o < cout; ++o) acc[o] = bias.empty() ? 0.0 : bias[o];
      for (int ky = 0; ky < 3; ++ky) {
        const int iy = oy * stride + ky - 1;
        if (iy < 0 || iy >= input.height()) continue;
        for (int kx = 0; kx < 3; ++kx) {
          const int ix = ox * stride + kx - 1;
          if (ix < 0 || ix >= input.width()) continue;
          k.matvec_accumulate(acc.data(), input.pixel(iy, ix).data(),
                              kernel.data() + (ky * 3 + kx) * tap_stride, cin, cout);
        }
      }
      auto px = out.pixel(oy, ox);
      for (int o = 0; o < cout; ++o) {
        const float v = static_cast<float>(acc[o]);
        px[o] = (act == Activation::Relu && !(v > 0.0f)) ? 0.0f : v;
      }
    }
  }
  return out;
}

RasterImage conv2d(const RasterImage& input, const WeightStore& weights, const std::string& prefix,
                   int stride, Activation act, const std::string& context) {
  const Tensor& w = weights.get(prefix + ".weight", context);
  const Tensor& b = weights.get(prefix + ".bias", context);
  if (w.shape.size() != 4 || w.shape[0] != 3 || w.shape[1] != 3 ||
      w.shape[2] != static_cast<std::uint32_t>(input.channels())) {
    throw InvalidShape((context.empty() ? "" : context + ": ") + "'" + prefix +
                       ".weight' does not fit a 3x3 conv on " + std::to_string(input.channels()) +
                       " channels");
  }
  return conv2d(input, w.values, b.values, static_cast<int>(w.shape[3]), stride, act);
}

Corr4D conv4d(const Corr4D& input, std::span<const float> kernel, int cout, Activation act) {
  const int cin = input.channels();
  const std::size_t tap_stride = static_cast<std::size_t>(cin) * cout;
  if (cout < 1 || kernel.size() != 81 * tap_stride) {
    throw InvalidShape("conv4d: kernel has " + std::to_string(kernel.size()) +
                       " values, expected 3^4x" + std::to_string(cin) + "x" + std::to_string(cout));
  }
  const int dims[4] = {input.ht(), input.wt(), input.hs(), input.ws()};
  Corr4D out(dims[0], dims[1], dims[2], dims[3], cout);
  const auto& k = simd::kernels();
  std::vector<double> acc(static_cast<std::size_t>(cout));
  const std::span<const float> in = input.data();

  for (int i = 0; i < dims[0]; ++i) {
    for (int j = 0; j < dims[1]; ++j) {
      for (int a = 0; a < dims[2]; ++a) {
        for (int b = 0; b < dims[3]; ++b) {
          std::fill(acc.begin(), acc.end(), 0.0);
          for (int di = 0; di < 3; ++di) {
            const int ni = i + di - 1;
            if (ni < 0 || ni >= dims[0]) continue;
            for (int dj = 0; dj < 3; ++dj) {
              const int nj = j + dj - 1;
              if (nj < 0 || nj >= dims[1]) continue;
              for (int dk = 0; dk < 3; ++dk) {
                const int nk = a + dk - 1;
                if (nk < 0 || nk >= dims[2]) continue;
                for (int dl = 0; dl < 3; ++dl) {
                  const int nl = b + dl - 1;
                  if (nl < 0 || nl >= dims[3]) continue;
                  const int tap = ((di * 3 + dj) * 3 + dk) * 3 + dl;
                  k.matvec_accumulate(acc.data(), in.data() + input.index(ni, nj, nk, nl),
                                      kernel.data() + tap * tap_stride, cin, cout);
                }
              }
            }
          }
          float* dst = out.data().data() + out.index(i, j, a, b);
          for (int o = 0; o < cout; ++o) {
            const float v = static_cast<float>(acc[o]);
            dst[o] = (act == Activation::Relu && !(v > 0.0f)) ? 0.0f : v;
          }
        }
      }
    }
  }
  return out;
}

RasterImage concat_channels(const RasterImage& a, const RasterImage& b) {
  if (!a.same_size(b)) throw InvalidShape("concat_channels: rasters differ in size");
  RasterImage out(a.height(), a.width(), a.channels() + b.channels());
  for (int y = 0; y < a.height(); ++y) {
    for (int x = 0; x < a.width(); ++x) {
      auto dst = out.pixel(y, x);
      const auto pa = a.pixel(y, x);
      const auto pb = b.pixel(y, x);
      std::copy(pa.begin(), pa.end(), dst.begin());
      std::copy(pb.begin(), pb.end(), dst.begin() + a.channels());
    }
  }
  return out;
}

}  // namespace e2ecd::net
