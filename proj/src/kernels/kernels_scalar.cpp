#include "kernels_impl.hpp"

namespace tensorlsd::kernels::scalar {

void leg_gram_accumulate(const double* x_re, const double* x_im, const double* y_re,
                         const double* y_im, std::size_t n, std::size_t count, std::size_t ld,
                         double* acc_re, double* acc_im) {
  for (std::size_t b = 0; b < count; ++b) {
    double dot_re = 0.0;
    double dot_im = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      const double yr = y_re[t * ld + b];
      const double yi = y_im[t * ld + b];
      dot_re += x_re[t] * yr + x_im[t] * yi;
      dot_im += x_re[t] * yi - x_im[t] * yr;
    }
    const double ar = acc_re[b];
    const double ai = acc_im[b];
    acc_re[b] = ar * dot_re - ai * dot_im;
    acc_im[b] = ar * dot_im + ai * dot_re;
  }
}

void complex_gemm(const double* a_re, const double* a_im, std::size_t lda, const double* b_re,
                  const double* b_im, std::size_t ldb, double* c_re, double* c_im,
                  std::size_t ldc, std::size_t rows, std::size_t inner, std::size_t cols) {
  for (std::size_t i = 0; i < rows; ++i) {
    double* cr = c_re + i * ldc;
    double* ci = c_im + i * ldc;
    for (std::size_t j = 0; j < cols; ++j) {
      cr[j] = 0.0;
      ci[j] = 0.0;
    }
    for (std::size_t k = 0; k < inner; ++k) {
      const double ar = a_re[i * lda + k];
      const double ai = a_im[i * lda + k];
      const double* br = b_re + k * ldb;
      const double* bi = b_im + k * ldb;
      for (std::size_t j = 0; j < cols; ++j) {
        cr[j] += ar * br[j] - ai * bi[j];
        ci[j] += ar * bi[j] + ai * br[j];
      }
    }
  }
}

void complex_dot(const double* a_re, const double* a_im, const double* b_re, const double* b_im,
                 std::size_t len, double* out_re, double* out_im) {
  double sr = 0.0;
  double si = 0.0;
  for (std::size_t j = 0; j < len; ++j) {
    sr += a_re[j] * b_re[j] - a_im[j] * b_im[j];
    si += a_re[j] * b_im[j] + a_im[j] * b_re[j];
  }
  *out_re = sr;
  *out_im = si;
}

}  // namespace tensorlsd::kernels::scalar
