#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace tensorlsd {

// Dense row-major complex matrix with split real/imaginary storage, the
// layout the SIMD kernels consume.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), re_(rows * cols, 0.0), im_(rows * cols, 0.0) {}

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::complex<double> operator()(std::size_t r, std::size_t c) const {
    return {re_[r * cols_ + c], im_[r * cols_ + c]};
  }
  void set(std::size_t r, std::size_t c, std::complex<double> z) {
    re_[r * cols_ + c] = z.real();
    im_[r * cols_ + c] = z.imag();
  }

  double* re() { return re_.data(); }
  double* im() { return im_.data(); }
  const double* re() const { return re_.data(); }
  const double* im() const { return im_.data(); }

  ComplexMatrix transpose() const;

  // Largest entry modulus.
  double max_abs() const;

  // Memory footprint of an n x n instance.
  static std::size_t bytes_for(std::size_t n) { return n * n * 2 * sizeof(double); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> re_;
  std::vector<double> im_;
};

// C = A * B through the active kernel table.
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);

// trace(A * B) without forming the product.
std::complex<double> trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

// Eigenvalues of a Hermitian matrix in ascending order (LAPACK zheevd, a
// backward-stable divide-and-conquer driver, so every eigenvalue has a
// residual of order machine epsilon times ||H||). Throws NumericalError when
// max |H - H^*| exceeds tol * max|H|, or when the solver fails.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h, double tol = 1e-10);

// Eigenvalues of a general square matrix (LAPACK zgeev), unordered.
std::vector<std::complex<double>> general_eigenvalues(const ComplexMatrix& a);

}  // namespace tensorlsd
