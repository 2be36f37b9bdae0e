// AArch64 Advanced SIMD variant. float64x2 lanes keep the 64-bit
// accumulation contract.
#include <arm_neon.h>

#include <cmath>

#include "e2ecd/simd/kernels.hpp"

namespace e2ecd::simd {
namespace {

double dot_neon(const float* a, const float* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float32x4_t va = vld1q_f32(a + i);
    const float32x4_t vb = vld1q_f32(b + i);
    acc0 = vfmaq_f64(acc0, vcvt_f64_f32(vget_low_f32(va)), vcvt_f64_f32(vget_low_f32(vb)));
    acc1 = vfmaq_f64(acc1, vcvt_high_f64_f32(va), vcvt_high_f64_f32(vb));
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) acc += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  return acc;
}

void matvec_neon(double* acc, const float* in, const float* weights, std::size_t cin,
                 std::size_t cout) {
  std::size_t o = 0;
  for (; o + 4 <= cout; o += 4) {
    float64x2_t a0 = vld1q_f64(acc + o);
    float64x2_t a1 = vld1q_f64(acc + o + 2);
    for (std::size_t c = 0; c < cin; ++c) {
      if (in[c] == 0.0f) continue;
      const float64x2_t x = vdupq_n_f64(static_cast<double>(in[c]));
      const float32x4_t w = vld1q_f32(weights + c * cout + o);
      a0 = vfmaq_f64(a0, x, vcvt_f64_f32(vget_low_f32(w)));
      a1 = vfmaq_f64(a1, x, vcvt_high_f64_f32(w));
    }
    vst1q_f64(acc + o, a0);
    vst1q_f64(acc + o + 2, a1);
  }
  for (; o < cout; ++o) {
    double a = acc[o];
    for (std::size_t c = 0; c < cin; ++c) {
      if (in[c] == 0.0f) continue;
      a = std::fma(static_cast<double>(in[c]), static_cast<double>(weights[c * cout + o]), a);
    }
    acc[o] = a;
  }
}

void abs_diff_neon(float* out, const float* a, const float* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) vst1q_f32(out + i, vabdq_f32(vld1q_f32(a + i), vld1q_f32(b + i)));
  for (; i < n; ++i) out[i] = std::fabs(a[i] - b[i]);
}

constexpr KernelTable kNeon{Backend::Neon, "neon", dot_neon, matvec_neon, abs_diff_neon};

}  // namespace

namespace detail {
const KernelTable* neon_table() { return &kNeon; }
}  // namespace detail

}  // namespace e2ecd::simd
