#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tensorlsd/combinatorics.hpp"

namespace tensorlsd {

// Spectrum of one realization of M (dimension n^k). Only the at most m
// nonzero eigenvalues are stored; the zero eigenvalue is an atom whose
// multiplicity is kept as an exact count.
struct SpectrumSample {
  std::vector<double> nonzero_eigenvalues;  // ascending
  BigCount zero_multiplicity = 0;
  BigCount dimension = 0;                   // n^k
  std::vector<double> trace_moments;        // (1/n^k) Tr M^p for p = 1..P
  std::uint64_t seed = 0;
  int n = 0;
  int k = 0;
  std::size_t m = 0;

  // ESD mass of the zero atom and of each stored eigenvalue.
  double zero_weight() const { return to_double(zero_multiplicity) / to_double(dimension); }
  double eigenvalue_weight() const { return 1.0 / to_double(dimension); }
};

}  // namespace tensorlsd
