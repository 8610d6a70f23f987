#pragma once

// Moment side of the model M = sum_alpha tau_alpha Y_alpha Y_alpha^*, where
// each Y_alpha is a k-fold tensor product of independent n-dimensional
// vectors with unit-modulus entries scaled by n^{-1/2}.
//
//  * limiting_moment: sum_s c^s sum_{alpha non-crossing, s values}
//    prod_t m_{deg_t(alpha)}, the large-(n,k) limit of (1/n^k) E Tr M^p.
//  * exact_mean_trace_moment: (1/n^k) E Tr M^p at finite (n,k,m), obtained
//    by summing the trace expansion over canonical (alpha, i) pairs.

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tensorlsd/combinatorics.hpp"
#include "tensorlsd/sequences.hpp"

namespace tensorlsd {

// Coefficients tau_1..tau_m and/or their limiting moments m_q, q >= 1.
class TauModel {
 public:
  // tau == value for every alpha; m_q = value^q for every q.
  static TauModel constant(double value);
  // Explicit coefficients. Their empirical moments serve as m_q.
  static TauModel from_coefficients(std::vector<double> taus);
  // Limiting moments only: moments[q-1] = m_q.
  static TauModel from_moments(std::vector<double> moments);

  // m_q, or empty when the model does not provide order q.
  std::optional<double> moment(int q) const;

  bool has_coefficients() const { return constant_.has_value() || !coefficients_.empty(); }
  // tau_1..tau_m. Throws UsageError for a moments-only model or when an
  // explicit list has a different length.
  std::vector<double> coefficients(std::size_t m) const;

  std::string describe() const;

 private:
  std::optional<double> constant_;
  std::vector<double> coefficients_;
  std::vector<double> moments_;
};

// mu(a, b) = E[xi^a conj(xi)^b] for the base entry distribution.
class MixedMomentRule {
 public:
  using Fn = std::function<std::complex<double>(int, int)>;
  MixedMomentRule(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}

  // xi = exp(i theta), theta uniform: mu(a, b) = [a == b].
  static MixedMomentRule uniform_phase();
  // xi = +-1: mu(a, b) = [a + b even].
  static MixedMomentRule rademacher();
  // xi uniform on the q-th roots of unity: mu(a, b) = [q divides a - b].
  static MixedMomentRule roots_of_unity(int q);

  std::complex<double> operator()(int a, int b) const { return fn_(a, b); }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  Fn fn_;
};

double limiting_moment(int p, double c, const TauModel& tau, int cap = kDefaultLengthCap);

// sum_s c^s (1/p) C(p,s-1) C(p,s). Summed in the same order as
// limiting_moment so the two agree bit for bit when tau == 1.
double mp_moment(int p, double c);

// (1/m) sum_j tau_j^q for q = 1..q_max.
std::vector<double> tau_empirical_moments(std::span<const double> taus, int q_max);

struct CarlemanResult {
  bool pass = true;
  std::optional<int> first_violation;  // 1-based order q
};

// Checks |m_q| <= A^q q^q for every supplied order (moments[q-1] = m_q).
CarlemanResult carleman_check(std::span<const double> moments, double bound_constant);

// sum over injective phi: [s] -> [m] of prod_t tau_{phi(t)}^{degrees[t]},
// evaluated by Moebius inversion over set partitions of [s] against the
// power sums P_q = sum_j tau_j^q (power_sums[q] = P_q, index 0 unused).
long double injection_sum(std::span<const int> degrees, std::span<const long double> power_sums);

// E(i, alpha) = n^{-p} prod_{(a,v)} mu(up(a,v), down(a,v)).
std::complex<long double> walk_expectation(const CanonicalSequence& i_seq,
                                           const CanonicalSequence& alpha, int n,
                                           const MixedMomentRule& rule);

// sum_r n(n-1)...(n-r+1) sum_{i canonical r-sequence} E(i, alpha): the
// expectation of one tensor leg of the alpha-term.
std::complex<long double> leg_factor(const CanonicalSequence& alpha, int n,
                                     const MixedMomentRule& rule, int cap = kDefaultLengthCap);

// (1/n^k) E Tr M^p for explicit coefficients. Throws UsageError when tau has
// no coefficients or p exceeds the cap.
double exact_mean_trace_moment(int n, int k, std::size_t m, int p, const TauModel& tau,
                               const MixedMomentRule& rule, int cap = 8);

}  // namespace tensorlsd
