// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include <cmath>

#include "e2ecd/simd/kernels.hpp"

namespace e2ecd::simd {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

double dot_avx2(const float* a, const float* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 va = _mm256_loadu_ps(a + i);
    const __m256 vb = _mm256_loadu_ps(b + i);
    acc0 = _mm256_fmadd_pd(_mm256_cvtps_pd(_mm256_castps256_ps128(va)),
                           _mm256_cvtps_pd(_mm256_castps256_ps128(vb)), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_cvtps_pd(_mm256_extractf128_ps(va, 1)),
                           _mm256_cvtps_pd(_mm256_extractf128_ps(vb, 1)), acc1);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  return acc;
}

inline __m256d load4(const float* p) { return _mm256_cvtps_pd(_mm_loadu_ps(p)); }

// Products of two floats are exact in double, so fmadd rounds exactly where
// the scalar `acc += x * w` does.
void matvec_avx2(double* acc, const float* in, const float* weights, std::size_t cin,
                 std::size_t cout) {
  std::size_t o = 0;
  for (; o + 16 <= cout; o += 16) {
    __m256d a0 = _mm256_loadu_pd(acc + o);
    __m256d a1 = _mm256_loadu_pd(acc + o + 4);
    __m256d a2 = _mm256_loadu_pd(acc + o + 8);
    __m256d a3 = _mm256_loadu_pd(acc + o + 12);
    for (std::size_t c = 0; c < cin; ++c) {
      if (in[c] == 0.0f) continue;
      const __m256d x = _mm256_set1_pd(static_cast<double>(in[c]));
      const float* w = weights + c * cout + o;
      a0 = _mm256_fmadd_pd(x, load4(w), a0);
      a1 = _mm256_fmadd_pd(x, load4(w + 4), a1);
      a2 = _mm256_fmadd_pd(x, load4(w + 8), a2);
      a3 = _mm256_fmadd_pd(x, load4(w + 12), a3);
    }
    _mm256_storeu_pd(acc + o, a0);
    _mm256_storeu_pd(acc + o + 4, a1);
    _mm256_storeu_pd(acc + o + 8, a2);
    _mm256_storeu_pd(acc + o + 12, a3);
  }
  for (; o + 4 <= cout; o += 4) {
    __m256d a0 = _mm256_loadu_pd(acc + o);
    for (std::size_t c = 0; c < cin; ++c) {
      if (in[c] == 0.0f) continue;
      a0 = _mm256_fmadd_pd(_mm256_set1_pd(static_cast<double>(in[c])), load4(weights + c * cout + o), a0);
    }
    _mm256_storeu_pd(acc + o, a0);
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

void abs_diff_avx2(float* out, const float* a, const float* b, std::size_t n) {
  const __m256 sign = _mm256_set1_ps(-0.0f);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 d = _mm256_sub_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i));
    _mm256_storeu_ps(out + i, _mm256_andnot_ps(sign, d));
  }
  for (; i < n; ++i) out[i] = std::fabs(a[i] - b[i]);
}

constexpr KernelTable kAvx2{Backend::Avx2, "avx2", dot_avx2, matvec_avx2, abs_diff_avx2};

}  // namespace

namespace detail {
const KernelTable* avx2_table() { return &kAvx2; }
}  // namespace detail

}  // namespace e2ecd::simd
