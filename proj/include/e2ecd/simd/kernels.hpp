#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

// Inner-loop kernels shared by the correlation layers and convolutions.
// Every kernel has a scalar reference implementation; vector variants are
// compiled per ISA and picked at runtime from the CPU's capabilities.
//
// Accumulation is always in 64-bit reals. matvec_accumulate keeps the
// scalar update order per output lane, so all backends agree bit for bit.
// dot reassociates its sum across lanes and agrees to rounding only.

namespace e2ecd::simd {

enum class Backend { Scalar, Avx2, Neon };

struct KernelTable {
  Backend backend;
  const char* name;

  // sum_i a[i] * b[i]
  double (*dot)(const float* a, const float* b, std::size_t n);

  // acc[o] += sum_c in[c] * weights[c * cout + o], c ascending; zero inputs
  // are skipped.
  void (*matvec_accumulate)(double* acc, const float* in, const float* weights, std::size_t cin,
                            std::size_t cout);

  // out[i] = |a[i] - b[i]|
  void (*abs_diff)(float* out, const float* a, const float* b, std::size_t n);
};

const KernelTable& scalar_kernels();

// Currently selected table. Defaults to the best backend the CPU supports,
// overridable with E2ECD_SIMD=scalar|avx2|neon.
const KernelTable& kernels();

bool backend_available(Backend backend);
std::vector<Backend> available_backends();
const KernelTable& kernels_for(Backend backend);
void select_backend(Backend backend);
Backend active_backend();
std::string_view backend_name(Backend backend);
Backend parse_backend(std::string_view name);

// Restores the previous backend on scope exit. Not thread-safe against
// concurrent selection; meant for tests and tools.
class ScopedBackend {
 public:
  explicit ScopedBackend(Backend backend) : previous_(active_backend()) { select_backend(backend); }
  ~ScopedBackend() { select_backend(previous_); }
  ScopedBackend(const ScopedBackend&) = delete;
  ScopedBackend& operator=(const ScopedBackend&) = delete;

 private:
  Backend previous_;
};

namespace detail {
const KernelTable* avx2_table();
const KernelTable* neon_table();
}  // namespace detail

}  // namespace e2ecd::simd
