#pragma once

// Data-parallel inner loops of the simulation. Complex data is stored split
// (separate real and imaginary planes) so every kernel vectorizes along the
// contiguous index. Each kernel has a scalar reference version and, on x86-64,
// an AVX2/FMA version; the active table is chosen once at runtime.
//
// Set TENSORLSD_KERNELS=scalar|avx2 in the environment to force a backend.

#include <cstddef>
#include <string_view>
#include <vector>

namespace tensorlsd::kernels {

enum class Backend { Scalar, Avx2 };

std::string_view to_string(Backend b);

struct KernelTable {
  Backend backend;

  // For beta in [0, count):
  //   acc[beta] *= sum_{t<n} conj(x[t]) * y[t * ld + beta]
  // x is one leg of one base vector, y holds the same leg of every base vector
  // with the base-vector index contiguous.
  void (*leg_gram_accumulate)(const double* x_re, const double* x_im, const double* y_re,
                              const double* y_im, std::size_t n, std::size_t count,
                              std::size_t ld, double* acc_re, double* acc_im);

  // C = A * B for row-major split-complex matrices; A is rows x inner with
  // leading dimension lda, B is inner x cols (ldb), C is rows x cols (ldc).
  void (*complex_gemm)(const double* a_re, const double* a_im, std::size_t lda,
                       const double* b_re, const double* b_im, std::size_t ldb, double* c_re,
                       double* c_im, std::size_t ldc, std::size_t rows, std::size_t inner,
                       std::size_t cols);

  // sum_j a[j] * b[j], no conjugation.
  void (*complex_dot)(const double* a_re, const double* a_im, const double* b_re,
                      const double* b_im, std::size_t len, double* out_re, double* out_im);
};

const KernelTable& scalar_kernels();

// Null when the AVX2 variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels();

std::vector<Backend> available_backends();

const KernelTable& kernels_for(Backend b);

// The table used by the library. Defaults to the widest available backend.
const KernelTable& active_kernels();

// Overrides the active table (tests and the CLI use this). Throws UsageError
// for a backend that is not available on this machine.
void set_active_backend(Backend b);

}  // namespace tensorlsd::kernels
