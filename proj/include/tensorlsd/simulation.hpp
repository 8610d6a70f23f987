#pragma once

// Monte Carlo realizations of M = sum_alpha tau_alpha Y_alpha Y_alpha^* with
// Y_alpha = y_alpha^(1) (x) ... (x) y_alpha^(k). Nothing of size n^k is ever
// formed: the nonzero spectrum of M equals that of the m x m matrix
// D_tau G with G_{alpha beta} = <Y_alpha, Y_beta> = prod_l <y_alpha^(l), y_beta^(l)>.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tensorlsd/combinatorics.hpp"
#include "tensorlsd/linalg.hpp"
#include "tensorlsd/moments.hpp"
#include "tensorlsd/spectrum.hpp"

namespace tensorlsd {

class EntryDistribution {
 public:
  enum class Kind { UniformPhase, Rademacher, RootsOfUnity };

  static EntryDistribution uniform_phase() { return {Kind::UniformPhase, 0}; }
  static EntryDistribution rademacher() { return {Kind::Rademacher, 2}; }
  static EntryDistribution roots_of_unity(int q);
  // "phase", "rademacher" or "roots:q".
  static EntryDistribution parse(const std::string& spec);

  Kind kind() const { return kind_; }
  int order() const { return q_; }
  std::string name() const;
  MixedMomentRule moment_rule() const;

 private:
  EntryDistribution(Kind kind, int q) : kind_(kind), q_(q) {}
  Kind kind_;
  int q_;
};

// m base vectors, each made of k legs of length n, stored split-complex with
// layout [(leg * n + t) * m + alpha] so one leg of all vectors is a contiguous
// n x m block.
class BaseVectors {
 public:
  BaseVectors(int n, int k, std::size_t m);

  int n() const { return n_; }
  int k() const { return k_; }
  std::size_t m() const { return m_; }

  std::complex<double> entry(std::size_t alpha, int leg, int t) const {
    const std::size_t idx = offset(leg, t) + alpha;
    return {re_[idx], im_[idx]};
  }
  void set(std::size_t alpha, int leg, int t, std::complex<double> z) {
    const std::size_t idx = offset(leg, t) + alpha;
    re_[idx] = z.real();
    im_[idx] = z.imag();
  }

  const double* leg_re(int leg) const { return re_.data() + offset(leg, 0); }
  const double* leg_im(int leg) const { return im_.data() + offset(leg, 0); }

 private:
  std::size_t offset(int leg, int t) const {
    return (static_cast<std::size_t>(leg) * static_cast<std::size_t>(n_) +
            static_cast<std::size_t>(t)) * m_;
  }

  int n_;
  int k_;
  std::size_t m_;
  std::vector<double> re_;
  std::vector<double> im_;
};

// Entries xi / sqrt(n) with xi drawn from `dist`, in the order alpha, leg, t.
BaseVectors sample_base_vectors(int n, int k, std::size_t m, const EntryDistribution& dist,
                                std::uint64_t seed);

// G_{alpha beta} = prod_l sum_t conj(y_alpha^(l)_t) y_beta^(l)_t. The upper
// triangle is computed and mirrored, so G is exactly Hermitian.
ComplexMatrix gram_matrix(const BaseVectors& y);
// Same matrix with rows spread over `threads` workers.
ComplexMatrix gram_matrix(const BaseVectors& y, int threads);

// (1/n^k) Tr M^p = (1/n^k) Tr (D_tau G)^p for p = 1..max_order, from powers
// of D_tau G up to ceil(max_order / 2). Throws NumericalError when a trace has
// an imaginary part above imag_tol relative to max(1, |real part|).
std::vector<double> trace_moments(const ComplexMatrix& gram, std::span<const double> tau,
                                  int max_order, double nk_scale, double imag_tol = 1e-8);

inline constexpr double kDefaultZeroThreshold = 1e-10;

// Spectrum of M from the Gram reduction. For tau >= 0 the Hermitian matrix
// D^{1/2} G D^{1/2} is diagonalized; otherwise D_tau G goes through a general
// solver and its eigenvalues must be real to 1e-8 relative. Eigenvalues with
// |lambda| <= zero_threshold * max|lambda| join the zero atom.
SpectrumSample esd(const ComplexMatrix& gram, std::span<const double> tau,
                   const BigCount& dimension, double zero_threshold = kDefaultZeroThreshold);

// Largest n^k the dense path accepts.
inline constexpr std::size_t kDenseDimensionCap = 4096;

// The n^k x n^k matrix sum_alpha tau_alpha Y_alpha Y_alpha^*, built from
// explicit Kronecker products (first leg most significant). Reference path
// for small instances only.
ComplexMatrix dense_tensor_matrix(const BaseVectors& y, std::span<const double> tau);

// All n^k eigenvalues of the dense matrix, ascending.
std::vector<double> dense_spectrum(const BaseVectors& y, std::span<const double> tau);

// Full sorted spectrum of length n^k from a Gram-reduced sample (zeros
// materialized); only for n^k <= kDenseDimensionCap.
std::vector<double> padded_spectrum(const SpectrumSample& sample);

struct SimulationConfig {
  int n = 8;
  int k = 4;
  std::size_t m = 0;  // 0: derive from c as round(c n^k)
  double c = 0.5;     // ratio used for theory columns and the MP reference
  EntryDistribution dist = EntryDistribution::uniform_phase();
  TauModel tau = TauModel::constant(1.0);
  int max_order = 4;
  int trials = 20;
  std::uint64_t seed = 42;
  int threads = 1;
  int histogram_bins = 60;
  double zero_threshold = kDefaultZeroThreshold;
  bool dense_check = false;
};

// m actually used by a config.
std::size_t resolved_m(const SimulationConfig& config);

BigCount tensor_dimension(int n, int k);

// Bytes held at peak by one trial (Gram matrix, its powers and transposes,
// the solver copy).
std::size_t estimate_trial_bytes(std::size_t m, int max_order);

struct HistogramBin {
  double left;
  double right;
  double mass;
};

struct TrialResult {
  int trial = 0;
  SpectrumSample sample;
  double ks = 0.0;
  // (1/n^k) sum lambda^p from the eigenvalues, p = 1..max_order.
  std::vector<double> eigenvalue_moments;
  // max_p |eigenvalue moment - trace moment| / max(1, |trace moment|).
  double trace_consistency = 0.0;
  // |sum lambda - sum tau| / max(1, |sum tau|).
  double trace_identity_error = 0.0;
  std::vector<HistogramBin> histogram;  // first row is the zero atom
  // Dense-oracle moments and max sorted-spectrum deviation (dense_check only).
  std::vector<double> dense_moments;
  double dense_spectrum_deviation = 0.0;
};

struct MomentSummary {
  int p = 0;
  double mean = 0.0;
  double standard_error = 0.0;
  double stddev = 0.0;
  std::optional<double> theory;  // limiting moment when tau provides it
};

struct TrialReport {
  SimulationConfig config;
  std::size_t m = 0;
  BigCount dimension = 0;
  std::vector<TrialResult> trials;
  std::vector<MomentSummary> moments;
  std::vector<HistogramBin> histogram;  // trial-averaged
  double ks_mean = 0.0;
  double ks_max = 0.0;
};

// Runs every trial of `config` (trial t seeded with derive_seed(seed, t)),
// in parallel when threads > 1; results do not depend on the thread count.
TrialReport run_trials(const SimulationConfig& config);

// One trial; exposed for tests and the CLI.
TrialResult run_single_trial(const SimulationConfig& config, int trial);

}  // namespace tensorlsd
