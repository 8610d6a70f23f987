#include <atomic>
#include <cstdlib>
#include <string>

#include "kernels_impl.hpp"
#include "tensorlsd/error.hpp"

namespace tensorlsd::kernels {

namespace {

const KernelTable kScalar{Backend::Scalar, &scalar::leg_gram_accumulate, &scalar::complex_gemm,
                          &scalar::complex_dot};

#if defined(TENSORLSD_HAVE_AVX2)
const KernelTable kAvx2{Backend::Avx2, &avx2::leg_gram_accumulate, &avx2::complex_gemm,
                        &avx2::complex_dot};

bool cpu_has_avx2() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const KernelTable* initial_table() {
  if (const char* forced = std::getenv("TENSORLSD_KERNELS")) {
    const std::string want(forced);
    if (want == "scalar") return &kScalar;
    if (want == "avx2" && avx2_kernels()) return avx2_kernels();
  }
  if (const KernelTable* wide = avx2_kernels()) return wide;
  return &kScalar;
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{initial_table()};
  return slot;
}

}  // namespace

std::string_view to_string(Backend b) {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
  }
  return "?";
}

const KernelTable& scalar_kernels() { return kScalar; }

const KernelTable* avx2_kernels() {
#if defined(TENSORLSD_HAVE_AVX2)
  static const bool supported = cpu_has_avx2();
  return supported ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

std::vector<Backend> available_backends() {
  std::vector<Backend> out{Backend::Scalar};
  if (avx2_kernels()) out.push_back(Backend::Avx2);
  return out;
}

const KernelTable& kernels_for(Backend b) {
  if (b == Backend::Scalar) return kScalar;
  if (const KernelTable* wide = avx2_kernels()) return *wide;
  throw UsageError("kernel backend " + std::string(to_string(b)) + " is not available");
}

const KernelTable& active_kernels() { return *active_slot().load(std::memory_order_acquire); }

void set_active_backend(Backend b) {
  active_slot().store(&kernels_for(b), std::memory_order_release);
}

}  // namespace tensorlsd::kernels
