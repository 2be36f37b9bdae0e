#include <cmath>

#include "e2ecd/simd/kernels.hpp"

namespace e2ecd::simd {
namespace {

double dot_scalar(const float* a, const float* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  return acc;
}

void matvec_scalar(double* acc, const float* in, const float* weights, std::size_t cin,
                   std::size_t cout) {
  for (std::size_t c = 0; c < cin; ++c) {
    const double x = in[c];
    if (x == 0.0) continue;
    const float* w = weights + c * cout;
    for (std::size_t o = 0; o < cout; ++o) acc[o] += x * static_cast<double>(w[o]);
  }
}

void abs_diff_scalar(float* out, const float* a, const float* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::fabs(a[i] - b[i]);
}

constexpr KernelTable kScalar{Backend::Scalar, "scalar", dot_scalar, matvec_scalar,
                              abs_diff_scalar};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

}  // namespace e2ecd::simd
