#include <atomic>
#include <cstdlib>
#include <string>

#include "e2ecd/core/error.hpp"
#include "e2ecd/simd/kernels.hpp"

namespace e2ecd::simd {

namespace detail {
#ifndef E2ECD_HAVE_AVX2
const KernelTable* avx2_table() { return nullptr; }
#endif
#ifndef E2ECD_HAVE_NEON
const KernelTable* neon_table() { return nullptr; }
#endif
}  // namespace detail

namespace {

bool cpu_supports(Backend backend) {
  switch (backend) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
#if defined(E2ECD_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      __builtin_cpu_init();
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Backend::Neon:
#if defined(E2ECD_HAVE_NEON)
      return true;  // Advanced SIMD is mandatory on AArch64.
#else
      return false;
#endif
  }
  return false;
}

const KernelTable* table_for(Backend backend) {
  switch (backend) {
    case Backend::Scalar:
      return &scalar_kernels();
    case Backend::Avx2:
      return detail::avx2_table();
    case Backend::Neon:
      return detail::neon_table();
  }
  return nullptr;
}

const KernelTable* initial_table() {
  if (const char* env = std::getenv("E2ECD_SIMD"); env && *env) {
    const Backend requested = parse_backend(env);
    if (!backend_available(requested)) {
      throw InvalidArgument(std::string("E2ECD_SIMD=") + env + " is not available on this CPU");
    }
    return table_for(requested);
  }
  for (Backend b : {Backend::Avx2, Backend::Neon}) {
    if (backend_available(b)) return table_for(b);
  }
  return &scalar_kernels();
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{initial_table()};
  return slot;
}

}  // namespace

bool backend_available(Backend backend) {
  return table_for(backend) != nullptr && cpu_supports(backend);
}

std::vector<Backend> available_backends() {
  std::vector<Backend> out;
  for (Backend b : {Backend::Scalar, Backend::Avx2, Backend::Neon}) {
    if (backend_available(b)) out.push_back(b);
  }
  return out;
}

const KernelTable& kernels_for(Backend backend) {
  if (!backend_available(backend)) {
    throw InvalidArgument("SIMD backend '" + std::string(backend_name(backend)) +
                          "' is not available");
  }
  return *table_for(backend);
}

const KernelTable& kernels() { return *active_slot().load(std::memory_order_acquire); }

void select_backend(Backend backend) {
  active_slot().store(&kernels_for(backend), std::memory_order_release);
}

Backend active_backend() { return kernels().backend; }

std::string_view backend_name(Backend backend) {
  switch (backend) {
    case Backend::Scalar:
      return "scalar";
    case Backend::Avx2:
      return "avx2";
    case Backend::Neon:
      return "neon";
  }
  return "unknown";
}

Backend parse_backend(std::string_view name) {
  if (name == "scalar") return Backend::Scalar;
  if (name == "avx2") return Backend::Avx2;
  if (name == "neon") return Backend::Neon;
  throw InvalidArgument("unknown SIMD backend '" + std::string(name) + "'");
}

}  // namespace e2ecd::simd
