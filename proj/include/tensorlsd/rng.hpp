#pragma once

// Random streams. The engine is std::mt19937_64, whose output sequence is
// fixed by the standard; all conversions to doubles and integers are done
// here rather than through <random> distributions (whose algorithms are
// implementation-defined), so a seed produces the same draws everywhere.

#include <cstdint>
#include <random>

namespace tensorlsd {

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Seed of stream `index` under master seed `seed`: a counter-based split,
// so trial t's stream does not depend on how many trials run or in which
// order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Uniform on {0, ..., bound - 1}, unbiased (rejection).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

}  // namespace tensorlsd
