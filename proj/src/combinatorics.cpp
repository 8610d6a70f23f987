#include "tensorlsd/combinatorics.hpp"

#include <vector>

#include "tensorlsd/error.hpp"

namespace tensorlsd {

namespace {

// Memoized rows 0..kStirlingRows-1, built once and read-only afterwards.
constexpr int kStirlingRows = 64;

const std::vector<std::vector<BigCount>>& stirling_table() {
  static const std::vector<std::vector<BigCount>> table = [] {
    std::vector<std::vector<BigCount>> t(kStirlingRows);
    t[0] = {BigCount(1)};
    for (int n = 1; n < kStirlingRows; ++n) {
      t[n].assign(static_cast<std::size_t>(n) + 1, BigCount(0));
      for (int k = 1; k <= n; ++k) {
        const BigCount left = (k - 1 <= n - 1) ? t[n - 1][k - 1] : BigCount(0);
        const BigCount same = (k <= n - 1) ? t[n - 1][k] : BigCount(0);
        t[n][k] = left + k * same;
      }
    }
    return t;
  }();
  return table;
}

BigCount factorial(int n) {
  BigCount out = 1;
  for (int j = 2; j <= n; ++j) out *= j;
  return out;
}

}  // namespace

BigCount stirling2(int n, int k) {
  if (n < 0 || k < 0) throw UsageError("stirling2: negative argument");
  if (k > n) return 0;
  if (n < kStirlingRows) return stirling_table()[n][k];
  // Past the memo: roll the recurrence forward from the last stored row.
  std::vector<BigCount> row = stirling_table()[kStirlingRows - 1];
  for (int m = kStirlingRows; m <= n; ++m) {
    std::vector<BigCount> next(static_cast<std::size_t>(m) + 1, BigCount(0));
    for (int j = 1; j <= m; ++j) {
      const BigCount left = row[j - 1];
      const BigCount same = (j <= m - 1) ? row[j] : BigCount(0);
      next[j] = left + j * same;
    }
    row = std::move(next);
  }
  return row[k];
}

BigCount stirling2_explicit(int n, int k) {
  if (n < 0 || k < 0) throw UsageError("stirling2_explicit: negative argument");
  if (k > n) return 0;
  if (k == 0) return n == 0 ? 1 : 0;
  // k! S(n,k) = sum_i (-1)^{k-i} C(k,i) i^n; the division by k! is exact.
  BigCount acc = 0;
  for (int i = 1; i <= k; ++i) {
    BigCount term = binomial(k, i) * ipow(i, n);
    if ((k - i) % 2 == 0) {
      acc += term;
    } else {
      acc -= term;
    }
  }
  return acc / factorial(k);
}

BigCount bell(int n) {
  if (n < 0) throw UsageError("bell: negative argument");
  BigCount total = 0;
  for (int k = 0; k <= n; ++k) total += stirling2(n, k);
  return total;
}

BigCount binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigCount out = 1;
  for (std::int64_t j = 1; j <= k; ++j) {
    out *= (n - k + j);
    out /= j;
  }
  return out;
}

BigCount falling_factorial(std::int64_t n, int r) {
  if (r < 0) throw UsageError("falling_factorial: negative step count");
  BigCount out = 1;
  for (int j = 0; j < r; ++j) {
    if (n - j <= 0) return 0;
    out *= (n - j);
  }
  return out;
}

BigCount c1_count(int s, int p) {
  if (p < 1 || s < 1 || s > p) return 0;
  return binomial(p, s - 1) * binomial(p, s) / p;
}

BigCount catalan(int p) {
  if (p < 0) throw UsageError("catalan: negative argument");
  return binomial(2 * p, p) / (p + 1);
}

BigCount ipow(std::int64_t base, int exponent) {
  if (exponent < 0) throw UsageError("ipow: negative exponent");
  return boost::multiprecision::pow(BigCount(base), static_cast<unsigned>(exponent));
}

double to_double(const BigCount& x) { return x.convert_to<double>(); }

long double to_long_double(const BigCount& x) { return x.convert_to<long double>(); }

}  // namespace tensorlsd
