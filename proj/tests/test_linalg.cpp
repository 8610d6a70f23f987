#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tensorlsd/error.hpp"
#include "tensorlsd/linalg.hpp"

using namespace tensorlsd;

namespace {

ComplexMatrix from_oracle(const oracle::Mat& m) {
  ComplexMatrix out(m.size(), m.size());
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m.size(); ++c) out.set(r, c, m[r][c]);
  return out;
}

ComplexMatrix random_matrix(oracle::Gen& gen, std::size_t rows, std::size_t cols) {
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, {gen.uniform(-1, 1), gen.uniform(-1, 1)});
  return m;
}

}  // namespace

TEST(Hermitian, IdentityAndDiagonal) {
  for (double v : hermitian_eigenvalues(ComplexMatrix::identity(4))) EXPECT_NEAR(v, 1.0, 1e-15);
  ComplexMatrix d(3, 3);
  d.set(0, 0, 3.0);
  d.set(1, 1, 1.0);
  d.set(2, 2, 2.0);
  const auto ev = hermitian_eigenvalues(d);
  ASSERT_EQ(ev.size(), 3u);
  EXPECT_NEAR(ev[0], 1.0, 1e-15);
  EXPECT_NEAR(ev[1], 2.0, 1e-15);
  EXPECT_NEAR(ev[2], 3.0, 1e-15);
}

TEST(Hermitian, MatchesCharacteristicPolynomialRoots) {
  oracle::Gen gen(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = gen.hermitian(5);
    const auto want = oracle::charpoly_roots(h);
    const auto got = hermitian_eigenvalues(from_oracle(h));
    ASSERT_EQ(want.size(), 5u);
    for (std::size_t j = 0; j < 5; ++j) EXPECT_NEAR(got[j], want[j], 1e-8);
  }
}

TEST(Hermitian, ResidualIsSmallRelativeToNorm) {
  // Trace and Frobenius norm are spectral invariants.
  oracle::Gen gen(9);
  const auto h = gen.hermitian(40);
  const auto ev = hermitian_eigenvalues(from_oracle(h));
  double tr = 0.0, fro = 0.0, ev_tr = 0.0, ev_sq = 0.0;
  for (std::size_t i = 0; i < 40; ++i) {
    tr += h[i][i].real();
    for (std::size_t j = 0; j < 40; ++j) fro += std::norm(h[i][j]);
  }
  for (double v : ev) {
    ev_tr += v;
    ev_sq += v * v;
  }
  EXPECT_NEAR(ev_tr, tr, 1e-12 * fro);
  EXPECT_NEAR(ev_sq, fro, 1e-12 * fro);
  EXPECT_TRUE(std::is_sorted(ev.begin(), ev.end()));
}

TEST(Hermitian, RejectsNonHermitian) {
  ComplexMatrix m(2, 2);
  m.set(0, 1, 1.0);
  EXPECT_THROW(hermitian_eigenvalues(m), NumericalError);
  ComplexMatrix diag_imag(1, 1);
  diag_imag.set(0, 0, {1.0, 0.5});
  EXPECT_THROW(hermitian_eigenvalues(diag_imag), NumericalError);
}

TEST(General, TriangularEigenvaluesAreDiagonal) {
  ComplexMatrix m(3, 3);
  m.set(0, 0, {1.0, 1.0});
  m.set(0, 2, 5.0);
  m.set(1, 1, -2.0);
  m.set(1, 2, {0.0, 3.0});
  m.set(2, 2, 0.5);
  auto ev = general_eigenvalues(m);
  ASSERT_EQ(ev.size(), 3u);
  std::sort(ev.begin(), ev.end(), [](auto a, auto b) { return a.real() < b.real(); });
  EXPECT_NEAR(std::abs(ev[0] - std::complex<double>(-2.0, 0.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(ev[1] - std::complex<double>(0.5, 0.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(ev[2] - std::complex<double>(1.0, 1.0)), 0.0, 1e-12);
}

TEST(Multiply, MatchesNaiveProduct) {
  oracle::Gen gen(13);
  for (std::size_t n : {1u, 3u, 8u, 17u, 33u}) {
    const auto a = random_matrix(gen, n, n);
    const auto b = random_matrix(gen, n, n);
    const auto c = multiply(a, b);
    std::complex<double> tr_want = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        std::complex<double> want = 0.0;
        for (std::size_t k = 0; k < n; ++k) want += a(i, k) * b(k, j);
        EXPECT_NEAR(std::abs(c(i, j) - want), 0.0, 1e-12 * n);
      }
      for (std::size_t k = 0; k < n; ++k) tr_want += a(i, k) * b(k, i);
    }
    EXPECT_NEAR(std::abs(trace_of_product(a, b) - tr_want), 0.0, 1e-12 * n);
  }
}

TEST(Matrix, TransposeAndMaxAbs) {
  ComplexMatrix m(2, 3);
  m.set(0, 2, {3.0, -4.0});
  const auto t = m.transpose();
  EXPECT_EQ(t.rows(), 3u);
  EXPECT_EQ(t(2, 0), std::complex<double>(3.0, -4.0));
  EXPECT_EQ(m.max_abs(), 5.0);
  EXPECT_EQ(ComplexMatrix::bytes_for(10), 1600u);
}
