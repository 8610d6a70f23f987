#include "tensorlsd/linalg.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "tensorlsd/error.hpp"
#include "tensorlsd/kernels/kernels.hpp"

namespace tensorlsd {

namespace {

std::vector<lapack_complex_double> interleave(const ComplexMatrix& a) {
  const std::size_t count = a.rows() * a.cols();
  std::vector<lapack_complex_double> out(count);
  auto* raw = reinterpret_cast<double*>(out.data());
  for (std::size_t j = 0; j < count; ++j) {
    raw[2 * j] = a.re()[j];
    raw[2 * j + 1] = a.im()[j];
  }
  return out;
}

}  // namespace

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix out(n, n);
  for (std::size_t j = 0; j < n; ++j) out.re_[j * n + j] = 1.0;
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      out.re_[c * rows_ + r] = re_[r * cols_ + c];
      out.im_[c * rows_ + r] = im_[r * cols_ + c];
    }
  }
  return out;
}

double ComplexMatrix::max_abs() const {
  double best = 0.0;
  for (std::size_t j = 0; j < re_.size(); ++j) best = std::max(best, std::hypot(re_[j], im_[j]));
  return best;
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw UsageError("multiply: inner dimensions differ");
  ComplexMatrix c(a.rows(), b.cols());
  kernels::active_kernels().complex_gemm(a.re(), a.im(), a.cols(), b.re(), b.im(), b.cols(),
                                         c.re(), c.im(), c.cols(), a.rows(), a.cols(), b.cols());
  return c;
}

std::complex<double> trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw UsageError("trace_of_product: shapes do not form a square product");
  }
  // trace(AB) = sum_ij A_ij B_ji = sum over rows of <A_i., (B^T)_i.>.
  const ComplexMatrix bt = b.transpose();
  const auto& k = kernels::active_kernels();
  long double sr = 0.0L;
  long double si = 0.0L;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double r = 0.0;
    double im = 0.0;
    k.complex_dot(a.re() + i * a.cols(), a.im() + i * a.cols(), bt.re() + i * bt.cols(),
                  bt.im() + i * bt.cols(), a.cols(), &r, &im);
    sr += r;
    si += im;
  }
  return {static_cast<double>(sr), static_cast<double>(si)};
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h, double tol) {
  if (h.rows() != h.cols()) throw UsageError("hermitian_eigenvalues: matrix is not square");
  const std::size_t n = h.rows();
  if (n == 0) return {};
  const double scale = std::max(h.max_abs(), 1e-300);
  double asym = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r; c < n; ++c) {
      asym = std::max(asym, std::abs(h(r, c) - std::conj(h(c, r))));
    }
  }
  if (asym > tol * scale) {
    throw NumericalError("hermitian_eigenvalues: input deviates from Hermitian by " +
                         std::to_string(asym));
  }
  auto buf = interleave(h);
  std::vector<double> w(n);
  const lapack_int info = LAPACKE_zheevd(LAPACK_ROW_MAJOR, 'N', 'U', static_cast<lapack_int>(n),
                                         buf.data(), static_cast<lapack_int>(n), w.data());
  if (info != 0) {
    throw NumericalError("hermitian_eigenvalues: zheevd failed with info " + std::to_string(info));
  }
  std::sort(w.begin(), w.end());
  return w;
}

std::vector<std::complex<double>> general_eigenvalues(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw UsageError("general_eigenvalues: matrix is not square");
  const std::size_t n = a.rows();
  if (n == 0) return {};
  auto buf = interleave(a);
  std::vector<lapack_complex_double> w(n);
  const lapack_int info =
      LAPACKE_zgeev(LAPACK_ROW_MAJOR, 'N', 'N', static_cast<lapack_int>(n), buf.data(),
                    static_cast<lapack_int>(n), w.data(), nullptr, static_cast<lapack_int>(n), nullptr,
                    static_cast<lapack_int>(n));
  if (info != 0) {
    throw NumericalError("general_eigenvalues: zgeev failed with info " + std::to_string(info));
  }
  std::vector<std::complex<double>> out(n);
  const auto* raw = reinterpret_cast<const double*>(w.data());
  for (std::size_t j = 0; j < n; ++j) out[j] = {raw[2 * j], raw[2 * j + 1]};
  return out;
}

}  // namespace tensorlsd
