#pragma once

// Internal declarations of the per-backend kernel entry points.

#include <cstddef>

#include "tensorlsd/kernels/kernels.hpp"

namespace tensorlsd::kernels {

#define TENSORLSD_DECLARE_KERNELS                                                           \
  void leg_gram_accumulate(const double* x_re, const double* x_im, const double* y_re,     \
                           const double* y_im, std::size_t n, std::size_t count,           \
                           std::size_t ld, double* acc_re, double* acc_im);                \
  void complex_gemm(const double* a_re, const double* a_im, std::size_t lda,               \
                    const double* b_re, const double* b_im, std::size_t ldb, double* c_re, \
                    double* c_im, std::size_t ldc, std::size_t rows, std::size_t inner,    \
                    std::size_t cols);                                                     \
  void complex_dot(const double* a_re, const double* a_im, const double* b_re,             \
                   const double* b_im, std::size_t len, double* out_re, double* out_im);

namespace scalar {
TENSORLSD_DECLARE_KERNELS
}

#if defined(TENSORLSD_HAVE_AVX2)
namespace avx2 {
TENSORLSD_DECLARE_KERNELS
}
#endif

#undef TENSORLSD_DECLARE_KERNELS

}  // namespace tensorlsd::kernels
