#pragma once

// Exact integer combinatorics. Everything here is arbitrary precision; the
// moment formulas convert to floating point only at their last step.

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

namespace tensorlsd {

using BigCount = boost::multiprecision::cpp_int;

// Stirling numbers of the second kind from the triangular recurrence
// S(n+1,k) = S(n,k-1) + k S(n,k), with S(0,0) = 1 and S(n,k) = 0 for k > n
// or k = 0 < n. Rows up to an internal bound are memoized on first use.
BigCount stirling2(int n, int k);

// Same numbers from the explicit alternating sum
// S(n,k) = sum_{i=1..k} (-1)^{k-i} i^n / (i! (k-i)!). Independent route used
// to cross-check the recurrence.
BigCount stirling2_explicit(int n, int k);

BigCount bell(int n);
BigCount binomial(std::int64_t n, std::int64_t k);

// n (n-1) ... (n-r+1); 1 when r = 0 and 0 when r > n.
BigCount falling_factorial(std::int64_t n, int r);

// Number of non-crossing canonical s-sequences of length p,
// (1/p) C(p,s-1) C(p,s) (the Narayana number). 0 outside 1 <= s <= p.
BigCount c1_count(int s, int p);

BigCount catalan(int p);

// n^e for a nonnegative machine integer base.
BigCount ipow(std::int64_t base, int exponent);

// Nearest double; exact while the value fits in 53 bits.
double to_double(const BigCount& x);
long double to_long_double(const BigCount& x);

}  // namespace tensorlsd
