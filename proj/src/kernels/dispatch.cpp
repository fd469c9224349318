#include <atomic>
#include <cstdlib>
#include <string>
#include <string_view>

#include "clrrt/kernels.hpp"

namespace clrrt::simd {
namespace {

Backend detect() {
  if (const char* env = std::getenv("CLRRT_SIMD"); env != nullptr) {
    if (std::string_view(env) == "scalar") return Backend::kScalar;
  }
  return backend_available(Backend::kAvx2) ? Backend::kAvx2 : Backend::kScalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> backend{detect()};
  return backend;
}

}  // namespace

const char* backend_name(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return "scalar";
    case Backend::kAvx2:
      return "avx2";
  }
  return "unknown";
}

bool backend_available(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return true;
    case Backend::kAvx2:
#if defined(CLRRT_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void set_backend(Backend backend) {
  if (!backend_available(backend)) {
    throw UsageError(std::string("SIMD backend not available: ") + backend_name(backend));
  }
  current().store(backend, std::memory_order_relaxed);
}

const KernelTable& kernels(Backend backend) {
#if defined(CLRRT_HAVE_AVX2)
  if (backend == Backend::kAvx2) return avx2::table();
#endif
  (void)backend;
  return scalar::table();
}

const KernelTable& kernels() { return kernels(active_backend()); }

}  // namespace clrrt::simd
