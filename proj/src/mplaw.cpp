#include "tensorlsd/mplaw.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "tensorlsd/error.hpp"
#include "tensorlsd/io.hpp"

namespace tensorlsd {

namespace {

using boost::math::quadrature::gauss_kronrod;

// With x = a + (b - a) sin^2(theta), the density element becomes
//   (b - a)^2 sin^2 cos^2 / (pi x) dtheta
// on [0, pi/2], which is smooth at both edges.
struct ThetaIntegrand {
  const MPLaw& law;
  int power = 0;  // multiply by x^power

  double operator()(double theta) const {
    const double s = std::sin(theta);
    const double co = std::cos(theta);
    const double width = law.upper - law.lower;
    const double x = law.lower + width * s * s;
    // x vanishes only at theta = 0 when c = 1, where the s^2 factors cancel.
    const double ratio = (law.lower == 0.0) ? width * co * co / std::numbers::pi
                                            : width * width * s * s * co * co /
                                                  (std::numbers::pi * x);
    return power == 0 ? ratio : ratio * std::pow(x, power);
  }
};

double theta_of(const MPLaw& law, double x) {
  const double u = (x - law.lower) / (law.upper - law.lower);
  return std::asin(std::sqrt(std::clamp(u, 0.0, 1.0)));
}

double integrate(const ThetaIntegrand& f, double lo, double hi, double tol) {
  if (hi <= lo) return 0.0;
  double error = 0.0;
  const double value = gauss_kronrod<double, 31>::integrate(f, lo, hi, 15, tol, &error);
  if (!std::isfinite(value) || error > std::max(tol, 1e-14) * 100.0) {
    throw NumericalError("MP quadrature did not reach tolerance (error estimate " +
                         std::to_string(error) + ")");
  }
  return value;
}

}  // namespace

MPLaw::MPLaw(double ratio) : c(ratio) {
  if (!(ratio > 0.0) || !std::isfinite(ratio)) {
    throw UsageError("MP law needs a finite ratio c > 0");
  }
  const double root = std::sqrt(ratio);
  lower = (1.0 - root) * (1.0 - root);
  upper = (1.0 + root) * (1.0 + root);
  atom = std::max(0.0, 1.0 - ratio);
}

double mp_density(double x, double c) {
  const MPLaw law(c);
  if (x <= law.lower || x >= law.upper || x <= 0.0) return 0.0;
  return std::sqrt((law.upper - x) * (x - law.lower)) / (2.0 * std::numbers::pi * x);
}

double mp_cdf(double x, double c, double quad_tol) {
  const double pts[1] = {x};
  return mp_cdf_sorted(pts, c, quad_tol).front();
}

std::vector<double> mp_cdf_sorted(std::span<const double> xs, double c, double quad_tol) {
  const MPLaw law(c);
  const ThetaIntegrand f{law, 0};
  std::vector<double> out(xs.size());
  double theta_prev = 0.0;
  double acc = 0.0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const double x = xs[j];
    if (j > 0 && x < xs[j - 1]) throw UsageError("mp_cdf_sorted: points must be nondecreasing");
    if (x < 0.0) {
      out[j] = 0.0;
      continue;
    }
    const double theta = theta_of(law, x);
    if (theta > theta_prev) {
      acc += integrate(f, theta_prev, theta, quad_tol);
      theta_prev = theta;
    }
    out[j] = law.atom + acc;
  }
  return out;
}

double mp_total_mass(double c, double quad_tol) {
  const MPLaw law(c);
  return law.atom + integrate(ThetaIntegrand{law, 0}, 0.0, std::numbers::pi / 2, quad_tol);
}

double mp_quadrature_moment(int p, double c, double quad_tol) {
  if (p < 0) throw UsageError("mp_quadrature_moment: negative order");
  const MPLaw law(c);
  if (p == 0) return mp_total_mass(c, quad_tol);
  return integrate(ThetaIntegrand{law, p}, 0.0, std::numbers::pi / 2, quad_tol);
}

double ks_distance(std::span<const double> points, std::span<const double> weights, double c,
                   double quad_tol) {
  if (points.size() != weights.size()) throw UsageError("ks_distance: size mismatch");
  if (points.empty()) throw UsageError("ks_distance: empty sample");

  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return points[l] < points[r]; });

  // Distinct jump locations with their total weights.
  std::vector<double> xs;
  std::vector<double> jump;
  for (std::size_t idx : order) {
    if (!xs.empty() && points[idx] == xs.back()) {
      jump.back() += weights[idx];
    } else {
      xs.push_back(points[idx]);
      jump.push_back(weights[idx]);
    }
  }
  const std::vector<double> cdf = mp_cdf_sorted(xs, c, quad_tol);

  double empirical = 0.0;
  double sup = 0.0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    // The MP cdf is continuous except for the atom's jump at 0.
    const double model_left = xs[j] <= 0.0 ? 0.0 : cdf[j];
    sup = std::max(sup, std::abs(empirical - model_left));
    empirical += jump[j];
    sup = std::max(sup, std::abs(empirical - cdf[j]));
  }
  return sup;
}

double ks_distance(const SpectrumSample& sample, double c, double quad_tol) {
  std::vector<double> points = sample.nonzero_eigenvalues;
  std::vector<double> weights(points.size(), sample.eigenvalue_weight());
  if (sample.zero_multiplicity > 0) {
    points.push_back(0.0);
    weights.push_back(sample.zero_weight());
  }
  return ks_distance(points, weights, c, quad_tol);
}

std::vector<MPTableRow> mp_table(double c, double x_min, double x_max, int points,
                                 double quad_tol) {
  if (points < 2 || !(x_max > x_min)) {
    throw UsageError("mp_table: need at least 2 points and x_max > x_min");
  }
  const MPLaw law(c);
  std::vector<double> xs(static_cast<std::size_t>(points));
  for (int j = 0; j < points; ++j) {
    xs[j] = x_min + (x_max - x_min) * static_cast<double>(j) / static_cast<double>(points - 1);
  }
  const std::vector<double> cdf = mp_cdf_sorted(xs, c, quad_tol);
  std::vector<MPTableRow> rows;
  if (law.atom > 0.0) rows.push_back({0.0, 0.0, law.atom, law.atom});
  for (int j = 0; j < points; ++j) rows.push_back({xs[j], mp_density(xs[j], c), cdf[j], 0.0});
  return rows;
}

void write_mp_table_csv(std::ostream& out, const std::vector<MPTableRow>& rows) {
  out << "x,pdf,cdf,atom\n";
  for (const auto& r : rows) {
    out << format_number(r.x) << ',' << format_number(r.pdf) << ',' << format_number(r.cdf) << ','
        << format_number(r.atom) << '\n';
  }
}

}  // namespace tensorlsd
