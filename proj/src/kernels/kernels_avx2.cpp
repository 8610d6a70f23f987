// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <vector>

#include "kernels_impl.hpp"

namespace tensorlsd::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

constexpr std::size_t kPanel = 8;  // columns per packed B panel (two ymm lanes)

// c[rows x 8] = a[rows x inner] * panel, panel packed as
// [k][0..7 real | 0..7 imag].
template <int Rows>
inline void micro_kernel(const double* a_re, const double* a_im, std::size_t lda,
                         const double* panel, std::size_t inner, double* c_re, double* c_im,
                         std::size_t ldc) {
  __m256d cr[Rows][2];
  __m256d ci[Rows][2];
  for (int r = 0; r < Rows; ++r) {
    cr[r][0] = cr[r][1] = ci[r][0] = ci[r][1] = _mm256_setzero_pd();
  }
  for (std::size_t k = 0; k < inner; ++k) {
    const double* bp = panel + k * 2 * kPanel;
    const __m256d br0 = _mm256_loadu_pd(bp);
    const __m256d br1 = _mm256_loadu_pd(bp + 4);
    const __m256d bi0 = _mm256_loadu_pd(bp + 8);
    const __m256d bi1 = _mm256_loadu_pd(bp + 12);
    for (int r = 0; r < Rows; ++r) {
      const __m256d ar = _mm256_broadcast_sd(a_re + r * lda + k);
      const __m256d ai = _mm256_broadcast_sd(a_im + r * lda + k);
      cr[r][0] = _mm256_fmadd_pd(ar, br0, cr[r][0]);
      cr[r][1] = _mm256_fmadd_pd(ar, br1, cr[r][1]);
      ci[r][0] = _mm256_fmadd_pd(ar, bi0, ci[r][0]);
      ci[r][1] = _mm256_fmadd_pd(ar, bi1, ci[r][1]);
      cr[r][0] = _mm256_fnmadd_pd(ai, bi0, cr[r][0]);
      cr[r][1] = _mm256_fnmadd_pd(ai, bi1, cr[r][1]);
      ci[r][0] = _mm256_fmadd_pd(ai, br0, ci[r][0]);
      ci[r][1] = _mm256_fmadd_pd(ai, br1, ci[r][1]);
    }
  }
  for (int r = 0; r < Rows; ++r) {
    _mm256_storeu_pd(c_re + r * ldc, cr[r][0]);
    _mm256_storeu_pd(c_re + r * ldc + 4, cr[r][1]);
    _mm256_storeu_pd(c_im + r * ldc, ci[r][0]);
    _mm256_storeu_pd(c_im + r * ldc + 4, ci[r][1]);
  }
}

}  // namespace

void leg_gram_accumulate(const double* x_re, const double* x_im, const double* y_re,
                         const double* y_im, std::size_t n, std::size_t count, std::size_t ld,
                         double* acc_re, double* acc_im) {
  std::size_t b = 0;
  for (; b + 4 <= count; b += 4) {
    __m256d dr = _mm256_setzero_pd();
    __m256d di = _mm256_setzero_pd();
    for (std::size_t t = 0; t < n; ++t) {
      const __m256d xr = _mm256_set1_pd(x_re[t]);
      const __m256d xi = _mm256_set1_pd(x_im[t]);
      const __m256d yr = _mm256_loadu_pd(y_re + t * ld + b);
      const __m256d yi = _mm256_loadu_pd(y_im + t * ld + b);
      dr = _mm256_fmadd_pd(xr, yr, dr);
      dr = _mm256_fmadd_pd(xi, yi, dr);
      di = _mm256_fmadd_pd(xr, yi, di);
      di = _mm256_fnmadd_pd(xi, yr, di);
    }
    const __m256d ar = _mm256_loadu_pd(acc_re + b);
    const __m256d ai = _mm256_loadu_pd(acc_im + b);
    _mm256_storeu_pd(acc_re + b, _mm256_fmsub_pd(ar, dr, _mm256_mul_pd(ai, di)));
    _mm256_storeu_pd(acc_im + b, _mm256_fmadd_pd(ar, di, _mm256_mul_pd(ai, dr)));
  }
  if (b < count) {
    scalar::leg_gram_accumulate(x_re, x_im, y_re + b, y_im + b, n, count - b, ld, acc_re + b,
                                acc_im + b);
  }
}

void complex_gemm(const double* a_re, const double* a_im, std::size_t lda, const double* b_re,
                  const double* b_im, std::size_t ldb, double* c_re, double* c_im,
                  std::size_t ldc, std::size_t rows, std::size_t inner, std::size_t cols) {
  const std::size_t full = cols - cols % kPanel;
  std::vector<double> panel(inner * 2 * kPanel);
  for (std::size_t j0 = 0; j0 < full; j0 += kPanel) {
    for (std::size_t k = 0; k < inner; ++k) {
      double* dst = panel.data() + k * 2 * kPanel;
      for (std::size_t j = 0; j < kPanel; ++j) {
        dst[j] = b_re[k * ldb + j0 + j];
        dst[kPanel + j] = b_im[k * ldb + j0 + j];
      }
    }
    std::size_t i = 0;
    for (; i + 2 <= rows; i += 2) {
      micro_kernel<2>(a_re + i * lda, a_im + i * lda, lda, panel.data(), inner,
                      c_re + i * ldc + j0, c_im + i * ldc + j0, ldc);
    }
    for (; i < rows; ++i) {
      micro_kernel<1>(a_re + i * lda, a_im + i * lda, lda, panel.data(), inner,
                      c_re + i * ldc + j0, c_im + i * ldc + j0, ldc);
    }
  }
  if (full < cols) {
    scalar::complex_gemm(a_re, a_im, lda, b_re + full, b_im + full, ldb, c_re + full,
                         c_im + full, ldc, rows, inner, cols - full);
  }
}

void complex_dot(const double* a_re, const double* a_im, const double* b_re, const double* b_im,
                 std::size_t len, double* out_re, double* out_im) {
  __m256d sr0 = _mm256_setzero_pd();
  __m256d si0 = _mm256_setzero_pd();
  __m256d sr1 = _mm256_setzero_pd();
  __m256d si1 = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 8 <= len; j += 8) {
    const __m256d ar0 = _mm256_loadu_pd(a_re + j);
    const __m256d ai0 = _mm256_loadu_pd(a_im + j);
    const __m256d br0 = _mm256_loadu_pd(b_re + j);
    const __m256d bi0 = _mm256_loadu_pd(b_im + j);
    const __m256d ar1 = _mm256_loadu_pd(a_re + j + 4);
    const __m256d ai1 = _mm256_loadu_pd(a_im + j + 4);
    const __m256d br1 = _mm256_loadu_pd(b_re + j + 4);
    const __m256d bi1 = _mm256_loadu_pd(b_im + j + 4);
    sr0 = _mm256_fmadd_pd(ar0, br0, sr0);
    sr0 = _mm256_fnmadd_pd(ai0, bi0, sr0);
    si0 = _mm256_fmadd_pd(ar0, bi0, si0);
    si0 = _mm256_fmadd_pd(ai0, br0, si0);
    sr1 = _mm256_fmadd_pd(ar1, br1, sr1);
    sr1 = _mm256_fnmadd_pd(ai1, bi1, sr1);
    si1 = _mm256_fmadd_pd(ar1, bi1, si1);
    si1 = _mm256_fmadd_pd(ai1, br1, si1);
  }
  double tail_re = 0.0;
  double tail_im = 0.0;
  scalar::complex_dot(a_re + j, a_im + j, b_re + j, b_im + j, len - j, &tail_re, &tail_im);
  *out_re = hsum(_mm256_add_pd(sr0, sr1)) + tail_re;
  *out_im = hsum(_mm256_add_pd(si0, si1)) + tail_im;
}

}  // namespace tensorlsd::kernels::avx2
