#include "tensorlsd/moments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "tensorlsd/error.hpp"
#include "tensorlsd/graphs.hpp"

namespace tensorlsd {

namespace {

std::complex<long double> int_pow(std::complex<long double> base, int exponent) {
  std::complex<long double> out = 1.0L;
  while (exponent > 0) {
    if (exponent & 1) out *= base;
    base *= base;
    exponent >>= 1;
  }
  return out;
}

}  // namespace

TauModel TauModel::constant(double value) {
  TauModel t;
  t.constant_ = value;
  return t;
}

TauModel TauModel::from_coefficients(std::vector<double> taus) {
  if (taus.empty()) throw UsageError("TauModel: empty coefficient list");
  TauModel t;
  t.coefficients_ = std::move(taus);
  return t;
}

TauModel TauModel::from_moments(std::vector<double> moments) {
  TauModel t;
  t.moments_ = std::move(moments);
  return t;
}

std::optional<double> TauModel::moment(int q) const {
  if (q < 1) return std::nullopt;
  if (constant_) return std::pow(*constant_, q);
  if (!coefficients_.empty()) return tau_empirical_moments(coefficients_, q).back();
  if (static_cast<std::size_t>(q) <= moments_.size()) return moments_[q - 1];
  return std::nullopt;
}

std::vector<double> TauModel::coefficients(std::size_t m) const {
  if (constant_) return std::vector<double>(m, *constant_);
  if (coefficients_.empty()) {
    throw UsageError("tau model provides limiting moments only; explicit coefficients required");
  }
  if (coefficients_.size() != m) {
    throw UsageError("tau model has " + std::to_string(coefficients_.size()) +
                     " coefficients but m = " + std::to_string(m));
  }
  return coefficients_;
}

std::string TauModel::describe() const {
  std::ostringstream out;
  out.precision(17);
  if (constant_) {
    out << "const:" << *constant_;
  } else if (!coefficients_.empty()) {
    out << "coefficients[" << coefficients_.size() << "]";
  } else {
    out << "moments[" << moments_.size() << "]";
  }
  return out.str();
}

MixedMomentRule MixedMomentRule::uniform_phase() {
  return {"phase", [](int a, int b) { return std::complex<double>(a == b ? 1.0 : 0.0, 0.0); }};
}

MixedMomentRule MixedMomentRule::rademacher() {
  return {"rademacher",
          [](int a, int b) { return std::complex<double>((a + b) % 2 == 0 ? 1.0 : 0.0, 0.0); }};
}

MixedMomentRule MixedMomentRule::roots_of_unity(int q) {
  if (q < 2) throw UsageError("roots of unity need q >= 2");
  return {"roots:" + std::to_string(q), [q](int a, int b) {
            return std::complex<double>((a - b) % q == 0 ? 1.0 : 0.0, 0.0);
          }};
}

double limiting_moment(int p, double c, const TauModel& tau, int cap) {
  if (!(c > 0.0)) throw UsageError("limiting_moment: c must be positive");
  if (p < 1 || p > cap) throw UsageError("limiting_moment: order out of range");
  std::vector<double> m_q(static_cast<std::size_t>(p) + 1, 0.0);
  for (int q = 1; q <= p; ++q) {
    const auto value = tau.moment(q);
    if (!value) throw UsageError("tau model lacks moment of order " + std::to_string(q));
    m_q[q] = *value;
  }
  double total = 0.0;
  for (int s = 1; s <= p; ++s) {
    double inner = 0.0;
    for_each_canonical(
        p, s,
        [&](const CanonicalSequence& a) {
          if (is_crossing(a)) return;
          double prod = 1.0;
          for (int d : degree_profile(a)) prod *= m_q[d];
          inner += prod;
        },
        cap);
    total += std::pow(c, s) * inner;
  }
  return total;
}

double mp_moment(int p, double c) {
  if (!(c > 0.0)) throw UsageError("mp_moment: c must be positive");
  if (p < 1) throw UsageError("mp_moment: order must be positive");
  double total = 0.0;
  for (int s = 1; s <= p; ++s) {
    const double inner = to_double(c1_count(s, p));
    total += std::pow(c, s) * inner;
  }
  return total;
}

std::vector<double> tau_empirical_moments(std::span<const double> taus, int q_max) {
  if (taus.empty()) throw UsageError("tau_empirical_moments: empty coefficient list");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max(q_max, 0)));
  for (int q = 1; q <= q_max; ++q) {
    long double acc = 0.0L;
    for (double t : taus) acc += std::pow(static_cast<long double>(t), q);
    out.push_back(static_cast<double>(acc / static_cast<long double>(taus.size())));
  }
  return out;
}

CarlemanResult carleman_check(std::span<const double> moments, double bound_constant) {
  if (!(bound_constant > 0.0)) throw UsageError("carleman_check: A must be positive");
  for (std::size_t j = 0; j < moments.size(); ++j) {
    const double q = static_cast<double>(j + 1);
    const double bound = std::pow(bound_constant, q) * std::pow(q, q);
    if (!(std::abs(moments[j]) <= bound)) return {false, static_cast<int>(j + 1)};
  }
  return {};
}

long double injection_sum(std::span<const int> degrees, std::span<const long double> power_sums) {
  const int s = static_cast<int>(degrees.size());
  if (s == 0) return 1.0L;
  int weight_total = 0;
  for (int d : degrees) weight_total += d;
  if (static_cast<std::size_t>(weight_total) >= power_sums.size()) {
    throw UsageError("injection_sum: power sums needed up to order " + std::to_string(weight_total));
  }
  long double total = 0.0L;
  // Moebius function of the partition lattice: prod_B (-1)^{|B|-1} (|B|-1)!.
  for_each_canonical(
      s, std::nullopt,
      [&](const CanonicalSequence& blocks) {
        const int q = blocks.distinct();
        std::vector<int> size(static_cast<std::size_t>(q), 0);
        std::vector<int> weight(static_cast<std::size_t>(q), 0);
        for (int t = 0; t < s; ++t) {
          ++size[blocks[t] - 1];
          weight[blocks[t] - 1] += degrees[t];
        }
        long double term = 1.0L;
        for (int b = 0; b < q; ++b) {
          long double mobius = (size[b] % 2 == 1) ? 1.0L : -1.0L;
          for (int f = 2; f < size[b]; ++f) mobius *= f;
          term *= mobius * power_sums[weight[b]];
        }
        total += term;
      },
      kDefaultLengthCap);
  return total;
}

std::complex<long double> walk_expectation(const CanonicalSequence& i_seq,
                                           const CanonicalSequence& alpha, int n,
                                           const MixedMomentRule& rule) {
  const WalkGraph g(i_seq, alpha);
  std::complex<long double> prod = 1.0L;
  for (const auto& e : g.edges()) {
    const std::complex<double> mu = rule(e.up, e.down);
    prod *= std::complex<long double>(mu.real(), mu.imag());
    if (prod == std::complex<long double>(0.0L)) return prod;
  }
  return prod * std::pow(static_cast<long double>(n), -static_cast<long double>(alpha.length()));
}

std::complex<long double> leg_factor(const CanonicalSequence& alpha, int n,
                                     const MixedMomentRule& rule, int cap) {
  const int p = alpha.length();
  std::vector<long double> ff(static_cast<std::size_t>(p) + 1);
  for (int r = 0; r <= p; ++r) ff[r] = to_long_double(falling_factorial(n, r));
  std::complex<long double> total = 0.0L;
  for_each_canonical(
      p, std::nullopt,
      [&](const CanonicalSequence& i_seq) {
        const long double weight = ff[i_seq.distinct()];
        if (weight == 0.0L) return;
        total += weight * walk_expectation(i_seq, alpha, n, rule);
      },
      cap);
  return total;
}

double exact_mean_trace_moment(int n, int k, std::size_t m, int p, const TauModel& tau,
                               const MixedMomentRule& rule, int cap) {
  if (n < 1 || k < 1 || m < 1) throw UsageError("exact_mean_trace_moment: n, k, m must be >= 1");
  if (p < 1 || p > cap) {
    throw UsageError("exact_mean_trace_moment: order " + std::to_string(p) +
                     " outside [1, " + std::to_string(cap) + "]");
  }
  const std::vector<double> taus = tau.coefficients(m);

  std::vector<long double> power_sums(static_cast<std::size_t>(p) + 1, 0.0L);
  for (int q = 1; q <= p; ++q) {
    long double acc = 0.0L;
    for (double t : taus) acc += std::pow(static_cast<long double>(t), q);
    power_sums[q] = acc;
  }

  std::map<std::vector<int>, long double> injection_memo;
  std::complex<long double> total = 0.0L;
  for (int s = 1; s <= p; ++s) {
    if (static_cast<std::size_t>(s) > m) break;
    for_each_canonical(
        p, s,
        [&](const CanonicalSequence& alpha) {
          std::vector<int> profile = degree_profile(alpha);
          std::vector<int> key = profile;
          std::sort(key.begin(), key.end());
          auto it = injection_memo.find(key);
          if (it == injection_memo.end()) {
            it = injection_memo.emplace(key, injection_sum(profile, power_sums)).first;
          }
          const std::complex<long double> leg = leg_factor(alpha, n, rule, cap);
          if (leg == std::complex<long double>(0.0L)) return;
          total += it->second * int_pow(leg, k);
        },
        cap);
  }
  const long double scale = std::pow(static_cast<long double>(n), static_cast<long double>(k));
  return static_cast<double>(total.real() / scale);
}

}  // namespace tensorlsd
