#include "tensorlsd/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "tensorlsd/error.hpp"
#include "tensorlsd/kernels/kernels.hpp"
#include "tensorlsd/mplaw.hpp"
#include "tensorlsd/rng.hpp"

namespace tensorlsd {

EntryDistribution EntryDistribution::roots_of_unity(int q) {
  if (q < 2) throw UsageError("roots of unity need q >= 2");
  return {Kind::RootsOfUnity, q};
}

EntryDistribution EntryDistribution::parse(const std::string& spec) {
  if (spec == "phase") return uniform_phase();
  if (spec == "rademacher") return rademacher();
  if (spec.rfind("roots:", 0) == 0) {
    const std::string tail = spec.substr(6);
    std::size_t used = 0;
    int q = 0;
    try {
      q = std::stoi(tail, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tail.size()) throw UsageError("bad distribution '" + spec + "'");
    return roots_of_unity(q);
  }
  throw UsageError("unknown distribution '" + spec + "' (phase|rademacher|roots:q)");
}

std::string EntryDistribution::name() const {
  switch (kind_) {
    case Kind::UniformPhase:
      return "phase";
    case Kind::Rademacher:
      return "rademacher";
    case Kind::RootsOfUnity:
      return "roots:" + std::to_string(q_);
  }
  return "?";
}

MixedMomentRule EntryDistribution::moment_rule() const {
  switch (kind_) {
    case Kind::UniformPhase:
      return MixedMomentRule::uniform_phase();
    case Kind::Rademacher:
      return MixedMomentRule::rademacher();
    case Kind::RootsOfUnity:
      return MixedMomentRule::roots_of_unity(q_);
  }
  return MixedMomentRule::uniform_phase();
}

BaseVectors::BaseVectors(int n, int k, std::size_t m) : n_(n), k_(k), m_(m) {
  if (n < 1 || k < 1 || m < 1) throw UsageError("base vectors need n, k, m >= 1");
  const std::size_t total = static_cast<std::size_t>(n) * static_cast<std::size_t>(k) * m;
  re_.assign(total, 0.0);
  im_.assign(total, 0.0);
}

BaseVectors sample_base_vectors(int n, int k, std::size_t m, const EntryDistribution& dist,
                                std::uint64_t seed) {
  BaseVectors y(n, k, m);
  RandomStream rng(seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t alpha = 0; alpha < m; ++alpha) {
    for (int leg = 0; leg < k; ++leg) {
      for (int t = 0; t < n; ++t) {
        std::complex<double> xi;
        switch (dist.kind()) {
          case EntryDistribution::Kind::UniformPhase: {
            const double theta = 2.0 * std::numbers::pi * rng.uniform();
            xi = {std::cos(theta), std::sin(theta)};
            break;
          }
          case EntryDistribution::Kind::Rademacher:
            xi = (rng.bits() >> 63) ? 1.0 : -1.0;
            break;
          case EntryDistribution::Kind::RootsOfUnity: {
            const auto j = rng.below(static_cast<std::uint64_t>(dist.order()));
            const double theta =
                2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(dist.order());
            xi = {std::cos(theta), std::sin(theta)};
            break;
          }
        }
        y.set(alpha, leg, t, xi * scale);
      }
    }
  }
  return y;
}

namespace {

// Runs body(i) for i in [0, count) on `threads` workers, rows handed out
// one at a time. Every index is processed exactly once, so the result does
// not depend on the thread count.
template <typename Body>
void parallel_for(std::size_t count, int threads, Body body) {
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const int workers = static_cast<int>(std::min<std::size_t>(count, threads));
  pool.reserve(workers);
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count || failed.load()) return;
        try {
          body(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

ComplexMatrix scaled_rows(const ComplexMatrix& g, std::span<const double> tau) {
  const std::size_t m = g.rows();
  ComplexMatrix a(m, m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) {
      a.re()[r * m + c] = tau[r] * g.re()[r * m + c];
      a.im()[r * m + c] = tau[r] * g.im()[r * m + c];
    }
  }
  return a;
}

void check_square(const ComplexMatrix& g, std::span<const double> tau) {
  if (g.rows() != g.cols()) throw UsageError("Gram matrix must be square");
  if (tau.size() != g.rows()) throw UsageError("tau length must equal m");
}

}  // namespace

ComplexMatrix gram_matrix(const BaseVectors& y) { return gram_matrix(y, 1); }

ComplexMatrix gram_matrix(const BaseVectors& y, int threads) {
  const std::size_t m = y.m();
  const auto n = static_cast<std::size_t>(y.n());
  ComplexMatrix g(m, m);
  const auto& kt = kernels::active_kernels();
  parallel_for(m, threads, [&](std::size_t alpha) {
    double* row_re = g.re() + alpha * m;
    double* row_im = g.im() + alpha * m;
    std::fill(row_re + alpha, row_re + m, 1.0);
    std::fill(row_im + alpha, row_im + m, 0.0);
    std::vector<double> x_re(n);
    std::vector<double> x_im(n);
    for (int leg = 0; leg < y.k(); ++leg) {
      const double* lr = y.leg_re(leg);
      const double* li = y.leg_im(leg);
      for (std::size_t t = 0; t < n; ++t) {
        x_re[t] = lr[t * m + alpha];
        x_im[t] = li[t * m + alpha];
      }
      kt.leg_gram_accumulate(x_re.data(), x_im.data(), lr + alpha, li + alpha, n, m - alpha, m,
                             row_re + alpha, row_im + alpha);
    }
  });
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < r; ++c) {
      g.re()[r * m + c] = g.re()[c * m + r];
      g.im()[r * m + c] = -g.im()[c * m + r];
    }
  }
  return g;
}

std::vector<double> trace_moments(const ComplexMatrix& gram, std::span<const double> tau,
                                  int max_order, double nk_scale, double imag_tol) {
  check_square(gram, tau);
  if (max_order < 1) throw UsageError("trace_moments: max order must be >= 1");
  const std::size_t m = gram.rows();
  const ComplexMatrix a = scaled_rows(gram, tau);

  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(max_order));
  auto record = [&](int p, std::complex<double> tr) {
    const double re = tr.real();
    const double im = tr.imag();
    if (!std::isfinite(re) || !std::isfinite(im) ||
        std::abs(im) > imag_tol * std::max(1.0, std::abs(re))) {
      throw NumericalError("Tr M^" + std::to_string(p) + " has imaginary residue " +
                           std::to_string(im));
    }
    out.push_back(re / nk_scale);
  };

  long double tr1_re = 0.0L;
  long double tr1_im = 0.0L;
  for (std::size_t r = 0; r < m; ++r) {
    tr1_re += a.re()[r * m + r];
    tr1_im += a.im()[r * m + r];
  }
  record(1, {static_cast<double>(tr1_re), static_cast<double>(tr1_im)});
  if (max_order == 1) return out;

  // powers[j] = A^j for j = 1..ceil(P/2).
  const int half = (max_order + 1) / 2;
  std::vector<ComplexMatrix> powers;
  powers.reserve(static_cast<std::size_t>(half) + 1);
  powers.emplace_back();
  powers.push_back(a);
  for (int j = 2; j <= half; ++j) powers.push_back(multiply(powers.back(), a));
  for (int p = 2; p <= max_order; ++p) {
    const int lo = p / 2;
    record(p, trace_of_product(powers[static_cast<std::size_t>(lo)],
                               powers[static_cast<std::size_t>(p - lo)]));
  }
  return out;
}

SpectrumSample esd(const ComplexMatrix& gram, std::span<const double> tau,
                   const BigCount& dimension, double zero_threshold) {
  check_square(gram, tau);
  const std::size_t m = gram.rows();
  const bool nonnegative = std::all_of(tau.begin(), tau.end(), [](double v) { return v >= 0.0; });

  std::vector<double> eig;
  if (nonnegative) {
    std::vector<double> root(m);
    for (std::size_t r = 0; r < m; ++r) root[r] = std::sqrt(tau[r]);
    ComplexMatrix h(m, m);
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < m; ++c) {
        const double s = root[r] * root[c];
        h.re()[r * m + c] = s * gram.re()[r * m + c];
        h.im()[r * m + c] = s * gram.im()[r * m + c];
      }
    }
    eig = hermitian_eigenvalues(h);
  } else {
    const auto z = general_eigenvalues(scaled_rows(gram, tau));
    double scale = 0.0;
    for (const auto& v : z) scale = std::max(scale, std::abs(v));
    eig.reserve(z.size());
    for (const auto& v : z) {
      if (std::abs(v.imag()) > 1e-8 * std::max(scale, std::numeric_limits<double>::min())) {
        throw NumericalError("eigenvalue with imaginary part " + std::to_string(v.imag()) +
                             " in a Hermitian problem");
      }
      eig.push_back(v.real());
    }
    std::sort(eig.begin(), eig.end());
  }

  double largest = 0.0;
  for (double v : eig) largest = std::max(largest, std::abs(v));
  const double cutoff = zero_threshold * largest;

  SpectrumSample out;
  out.dimension = dimension;
  out.m = m;
  for (double v : eig) {
    if (std::abs(v) > cutoff) out.nonzero_eigenvalues.push_back(v);
  }
  const BigCount nonzero = out.nonzero_eigenvalues.size();
  if (nonzero > dimension) {
    throw NumericalError("more nonzero eigenvalues than the dimension n^k; the zero threshold is "
                         "too strict for this instance");
  }
  out.zero_multiplicity = dimension - nonzero;
  return out;
}

ComplexMatrix dense_tensor_matrix(const BaseVectors& y, std::span<const double> tau) {
  const std::size_t m = y.m();
  if (tau.size() != m) throw UsageError("tau length must equal m");
  const BigCount dim = tensor_dimension(y.n(), y.k());
  if (dim > BigCount(kDenseDimensionCap)) {
    throw UsageError("dense path limited to n^k <= " + std::to_string(kDenseDimensionCap));
  }
  const auto big_n = static_cast<std::size_t>(dim);
  const auto n = static_cast<std::size_t>(y.n());

  // Columns of Y are the tensors Y_alpha; Z = D_tau Y^*.
  ComplexMatrix ymat(big_n, m);
  for (std::size_t idx = 0; idx < big_n; ++idx) {
    std::vector<int> digits(static_cast<std::size_t>(y.k()));
    std::size_t rest = idx;
    for (int leg = y.k() - 1; leg >= 0; --leg) {
      digits[static_cast<std::size_t>(leg)] = static_cast<int>(rest % n);
      rest /= n;
    }
    for (std::size_t alpha = 0; alpha < m; ++alpha) {
      std::complex<double> v = 1.0;
      for (int leg = 0; leg < y.k(); ++leg) {
        v *= y.entry(alpha, leg, digits[static_cast<std::size_t>(leg)]);
      }
      ymat.set(idx, alpha, v);
    }
  }
  ComplexMatrix z(m, big_n);
  for (std::size_t alpha = 0; alpha < m; ++alpha) {
    for (std::size_t idx = 0; idx < big_n; ++idx) {
      z.set(alpha, idx, tau[alpha] * std::conj(ymat(idx, alpha)));
    }
  }
  ComplexMatrix out = multiply(ymat, z);
  // The product is Hermitian up to rounding; make it exactly so.
  for (std::size_t r = 0; r < big_n; ++r) {
    out.im()[r * big_n + r] = 0.0;
    for (std::size_t c = r + 1; c < big_n; ++c) {
      const std::complex<double> avg = 0.5 * (out(r, c) + std::conj(out(c, r)));
      out.set(r, c, avg);
      out.set(c, r, std::conj(avg));
    }
  }
  return out;
}

std::vector<double> dense_spectrum(const BaseVectors& y, std::span<const double> tau) {
  return hermitian_eigenvalues(dense_tensor_matrix(y, tau));
}

std::vector<double> padded_spectrum(const SpectrumSample& sample) {
  if (sample.dimension > BigCount(kDenseDimensionCap)) {
    throw UsageError("padded spectrum limited to n^k <= " + std::to_string(kDenseDimensionCap));
  }
  std::vector<double> out = sample.nonzero_eigenvalues;
  out.insert(out.end(), static_cast<std::size_t>(sample.zero_multiplicity), 0.0);
  std::sort(out.begin(), out.end());
  return out;
}

BigCount tensor_dimension(int n, int k) {
  if (n < 1 || k < 1) throw UsageError("n and k must be >= 1");
  return ipow(n, k);
}

std::size_t resolved_m(const SimulationConfig& config) {
  if (config.m > 0) return config.m;
  if (!(config.c > 0.0) || !std::isfinite(config.c)) throw UsageError("c must be > 0");
  const double dim = to_double(tensor_dimension(config.n, config.k));
  const double m = std::round(config.c * dim);
  if (m < 1.0) throw UsageError("round(c n^k) is 0; raise c or the dimension");
  if (m > 1e9) throw UsageError("round(c n^k) exceeds 1e9 base vectors");
  return static_cast<std::size_t>(m);
}

std::size_t estimate_trial_bytes(std::size_t m, int max_order) {
  const std::size_t half = static_cast<std::size_t>(std::max(1, (max_order + 1) / 2));
  // Trace phase: G, D_tau G, higher powers and one transpose. Spectrum
  // phase: G, the scaled copy and the solver's interleaved copy.
  const std::size_t matrices = std::max<std::size_t>(3 + half, 3);
  return matrices * ComplexMatrix::bytes_for(m);
}

namespace {

std::vector<HistogramBin> histogram_of(const SpectrumSample& s, double lo, double hi, int bins) {
  std::vector<HistogramBin> out;
  out.push_back({0.0, 0.0, s.zero_weight()});
  const double width = (hi - lo) / bins;
  std::vector<double> mass(static_cast<std::size_t>(bins), 0.0);
  const double w = s.eigenvalue_weight();
  for (double v : s.nonzero_eigenvalues) {
    auto b = static_cast<long>(std::floor((v - lo) / width));
    b = std::clamp<long>(b, 0, bins - 1);
    mass[static_cast<std::size_t>(b)] += w;
  }
  for (int b = 0; b < bins; ++b) {
    out.push_back({lo + width * b, b + 1 == bins ? hi : lo + width * (b + 1),
                   mass[static_cast<std::size_t>(b)]});
  }
  return out;
}

std::optional<double> theory_moment(const SimulationConfig& config, int p) {
  for (int q = 1; q <= p; ++q) {
    if (!config.tau.moment(q)) return std::nullopt;
  }
  return limiting_moment(p, config.c, config.tau);
}

TrialResult trial_impl(const SimulationConfig& config, int trial, int inner_threads) {
  const std::size_t m = resolved_m(config);
  const BigCount dim = tensor_dimension(config.n, config.k);
  const double nk = to_double(dim);
  const std::vector<double> tau = config.tau.coefficients(m);
  const std::uint64_t seed = derive_seed(config.seed, static_cast<std::uint64_t>(trial));

  const BaseVectors y = sample_base_vectors(config.n, config.k, m, config.dist, seed);
  const ComplexMatrix g = gram_matrix(y, inner_threads);

  TrialResult out;
  out.trial = trial;
  std::vector<double> moments = trace_moments(g, tau, config.max_order, nk);
  out.sample = esd(g, tau, dim, config.zero_threshold);
  out.sample.trace_moments = moments;
  out.sample.seed = seed;
  out.sample.n = config.n;
  out.sample.k = config.k;
  out.sample.m = m;

  long double tau_sum = 0.0L;
  for (double v : tau) tau_sum += v;
  for (int p = 1; p <= config.max_order; ++p) {
    long double acc = 0.0L;
    long double abs_acc = 0.0L;
    for (double v : out.sample.nonzero_eigenvalues) {
      const long double term = std::pow(static_cast<long double>(v), p);
      acc += term;
      abs_acc += std::abs(term);
    }
    const double value = static_cast<double>(acc / nk);
    out.eigenvalue_moments.push_back(value);
    const double ref = moments[static_cast<std::size_t>(p - 1)];
    const double scale = std::max({std::abs(ref), static_cast<double>(abs_acc / nk),
                                   std::numeric_limits<double>::min()});
    out.trace_consistency = std::max(out.trace_consistency, std::abs(value - ref) / scale);
    if (p == 1) {
      out.trace_identity_error = static_cast<double>(std::abs(acc - tau_sum)) /
                                 std::max(1.0, static_cast<double>(std::abs(tau_sum)));
    }
  }

  out.ks = ks_distance(out.sample, config.c);

  if (config.dense_check) {
    const std::vector<double> dense = dense_spectrum(y, tau);
    const std::vector<double> reduced = padded_spectrum(out.sample);
    for (std::size_t j = 0; j < dense.size(); ++j) {
      out.dense_spectrum_deviation =
          std::max(out.dense_spectrum_deviation, std::abs(dense[j] - reduced[j]));
    }
    for (int p = 1; p <= config.max_order; ++p) {
      long double acc = 0.0L;
      for (double v : dense) acc += std::pow(static_cast<long double>(v), p);
      out.dense_moments.push_back(static_cast<double>(acc / nk));
    }
  }
  return out;
}

void validate(const SimulationConfig& config) {
  if (config.n < 1 || config.k < 1) throw UsageError("n and k must be >= 1");
  if (config.trials < 1) throw UsageError("trials must be >= 1");
  if (config.max_order < 1) throw UsageError("max order must be >= 1");
  if (!(config.c > 0.0) || !std::isfinite(config.c)) throw UsageError("c must be > 0");
  if (config.histogram_bins < 1) throw UsageError("histogram needs at least one bin");
  if (!(config.zero_threshold >= 0.0)) throw UsageError("zero threshold must be >= 0");
  if (config.dense_check && tensor_dimension(config.n, config.k) > BigCount(kDenseDimensionCap)) {
    throw UsageError("--dense-check needs n^k <= " + std::to_string(kDenseDimensionCap));
  }
}

}  // namespace

TrialResult run_single_trial(const SimulationConfig& config, int trial) {
  validate(config);
  return trial_impl(config, trial, std::max(1, config.threads));
}

TrialReport run_trials(const SimulationConfig& config) {
  validate(config);
  TrialReport report;
  report.config = config;
  report.m = resolved_m(config);
  report.dimension = tensor_dimension(config.n, config.k);

  const int threads = std::max(1, config.threads);
  const int outer = std::min(threads, config.trials);
  const int inner = std::max(1, threads / outer);
  report.trials.resize(static_cast<std::size_t>(config.trials));
  parallel_for(static_cast<std::size_t>(config.trials), outer, [&](std::size_t t) {
    report.trials[t] = trial_impl(config, static_cast<int>(t), inner);
  });

  const double count = static_cast<double>(config.trials);
  for (int p = 1; p <= config.max_order; ++p) {
    MomentSummary s;
    s.p = p;
    long double sum = 0.0L;
    for (const auto& tr : report.trials) sum += tr.sample.trace_moments[static_cast<std::size_t>(p - 1)];
    s.mean = static_cast<double>(sum / count);
    long double sq = 0.0L;
    for (const auto& tr : report.trials) {
      const long double d = tr.sample.trace_moments[static_cast<std::size_t>(p - 1)] - s.mean;
      sq += d * d;
    }
    s.stddev = config.trials > 1 ? static_cast<double>(std::sqrt(sq / (count - 1.0))) : 0.0;
    s.standard_error = s.stddev / std::sqrt(count);
    s.theory = theory_moment(config, p);
    report.moments.push_back(s);
  }

  // Common bins for every trial: [min(0, smallest), max(MP edge, largest)].
  double lo = 0.0;
  double hi = MPLaw(config.c).upper;
  for (const auto& tr : report.trials) {
    if (!tr.sample.nonzero_eigenvalues.empty()) {
      lo = std::min(lo, tr.sample.nonzero_eigenvalues.front());
      hi = std::max(hi, tr.sample.nonzero_eigenvalues.back());
    }
  }
  report.histogram = histogram_of(report.trials.front().sample, lo, hi, config.histogram_bins);
  for (auto& bin : report.histogram) bin.mass = 0.0;
  for (auto& tr : report.trials) {
    tr.histogram = histogram_of(tr.sample, lo, hi, config.histogram_bins);
    for (std::size_t b = 0; b < tr.histogram.size(); ++b) {
      report.histogram[b].mass += tr.histogram[b].mass / count;
    }
    report.ks_mean += tr.ks / count;
    report.ks_max = std::max(report.ks_max, tr.ks);
  }
  return report;
}

}  // namespace tensorlsd
