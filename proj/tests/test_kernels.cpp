#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tensorlsd/error.hpp"
#include "tensorlsd/kernels/kernels.hpp"

using namespace tensorlsd;
using namespace tensorlsd::kernels;

namespace {

std::vector<double> random_vec(oracle::Gen& gen, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = gen.uniform(-1.0, 1.0);
  return v;
}

double max_rel(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(b[i])));
  }
  return worst;
}

class KernelEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    if (avx2_kernels() == nullptr) GTEST_SKIP() << "AVX2/FMA not available on this machine";
    simd = avx2_kernels();
  }
  const KernelTable& ref = scalar_kernels();
  const KernelTable* simd = nullptr;
};

}  // namespace

TEST(Kernels, ScalarAlwaysAvailable) {
  const auto backends = available_backends();
  EXPECT_EQ(backends.front(), Backend::Scalar);
  EXPECT_EQ(kernels_for(Backend::Scalar).backend, Backend::Scalar);
  EXPECT_EQ(to_string(Backend::Avx2), "avx2");
}

TEST(Kernels, SwitchingBackends) {
  const Backend before = active_kernels().backend;
  set_active_backend(Backend::Scalar);
  EXPECT_EQ(active_kernels().backend, Backend::Scalar);
  if (avx2_kernels() == nullptr) {
    EXPECT_THROW(set_active_backend(Backend::Avx2), UsageError);
  }
  set_active_backend(before);
}

TEST_F(KernelEquivalence, LegGram) {
  oracle::Gen gen(21);
  for (std::size_t n : {1u, 2u, 7u, 8u}) {
    for (std::size_t count : {1u, 3u, 4u, 5u, 13u, 64u, 67u}) {
      const std::size_t ld = count + 3;
      const auto xr = random_vec(gen, n), xi = random_vec(gen, n);
      const auto yr = random_vec(gen, n * ld), yi = random_vec(gen, n * ld);
      auto ar = random_vec(gen, count), ai = random_vec(gen, count);
      auto br = ar, bi = ai;
      ref.leg_gram_accumulate(xr.data(), xi.data(), yr.data(), yi.data(), n, count, ld, ar.data(), ai.data());
      simd->leg_gram_accumulate(xr.data(), xi.data(), yr.data(), yi.data(), n, count, ld, br.data(), bi.data());
      EXPECT_LT(max_rel(br, ar), 1e-13);
      EXPECT_LT(max_rel(bi, ai), 1e-13);
    }
  }
}

TEST_F(KernelEquivalence, Gemm) {
  oracle::Gen gen(22);
  const std::size_t shapes[][3] = {{1, 1, 1}, {3, 5, 7}, {8, 8, 8}, {9, 17, 15}, {16, 4, 33}, {2, 64, 70}};
  for (const auto& s : shapes) {
    const std::size_t rows = s[0], inner = s[1], cols = s[2];
    const std::size_t lda = inner + 1, ldb = cols + 2, ldc = cols + 1;
    const auto ar = random_vec(gen, rows * lda), ai = random_vec(gen, rows * lda);
    const auto br = random_vec(gen, inner * ldb), bi = random_vec(gen, inner * ldb);
    std::vector<double> c1r(rows * ldc, 9.0), c1i(rows * ldc, 9.0), c2r = c1r, c2i = c1i;
    ref.complex_gemm(ar.data(), ai.data(), lda, br.data(), bi.data(), ldb, c1r.data(), c1i.data(), ldc, rows, inner, cols);
    simd->complex_gemm(ar.data(), ai.data(), lda, br.data(), bi.data(), ldb, c2r.data(), c2i.data(), ldc, rows, inner, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < ldc; ++c) {
        const std::size_t idx = r * ldc + c;
        if (c >= cols) {
          // Padding columns are left alone by both.
          EXPECT_EQ(c2r[idx], c1r[idx]);
          continue;
        }
        EXPECT_NEAR(c2r[idx], c1r[idx], 1e-12 * inner);
        EXPECT_NEAR(c2i[idx], c1i[idx], 1e-12 * inner);
      }
    }
  }
}

TEST_F(KernelEquivalence, Dot) {
  oracle::Gen gen(23);
  for (std::size_t len : {0u, 1u, 3u, 4u, 8u, 9u, 31u, 1000u}) {
    const auto ar = random_vec(gen, len), ai = random_vec(gen, len);
    const auto br = random_vec(gen, len), bi = random_vec(gen, len);
    double r1 = 0, i1 = 0, r2 = 0, i2 = 0;
    ref.complex_dot(ar.data(), ai.data(), br.data(), bi.data(), len, &r1, &i1);
    simd->complex_dot(ar.data(), ai.data(), br.data(), bi.data(), len, &r2, &i2);
    EXPECT_NEAR(r2, r1, 1e-13 * std::max<double>(1.0, len));
    EXPECT_NEAR(i2, i1, 1e-13 * std::max<double>(1.0, len));
  }
}

TEST(Kernels, ScalarReferenceValues) {
  const double xr[] = {1.0, 0.0}, xi[] = {0.0, 1.0};
  const double yr[] = {1.0, 0.0}, yi[] = {0.0, 1.0};  // one column, ld = 1
  double ar = 2.0, ai = 0.0;
  // conj(1)*1 + conj(i)*i = 2
  scalar_kernels().leg_gram_accumulate(xr, xi, yr, yi, 2, 1, 1, &ar, &ai);
  EXPECT_EQ(ar, 4.0);
  EXPECT_EQ(ai, 0.0);
}
