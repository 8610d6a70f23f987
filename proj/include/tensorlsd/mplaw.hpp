#pragma once

// Marchenko-Pastur law with ratio c: density
//   sqrt((b - x)(x - a)) / (2 pi x)  on [a, b], a = (1 - sqrt c)^2, b = (1 + sqrt c)^2,
// plus an atom of mass 1 - c at zero when c < 1.

#include <ostream>
#include <span>
#include <vector>

#include "tensorlsd/spectrum.hpp"

namespace tensorlsd {

inline constexpr double kDefaultQuadTol = 1e-11;

struct MPLaw {
  explicit MPLaw(double ratio);  // throws UsageError unless ratio > 0

  double c;
  double lower;  // a
  double upper;  // b
  double atom;   // max(0, 1 - c)
};

// Continuous part only; the zero atom is reported by MPLaw::atom.
double mp_density(double x, double c);

// P(X <= x), atom included from x = 0 on.
double mp_cdf(double x, double c, double quad_tol = kDefaultQuadTol);

// mp_cdf at every point of a nondecreasing list, integrating segment by
// segment between consecutive points.
std::vector<double> mp_cdf_sorted(std::span<const double> xs, double c,
                                  double quad_tol = kDefaultQuadTol);

// Mass of the continuous part plus the atom (should be 1).
double mp_total_mass(double c, double quad_tol = kDefaultQuadTol);

// p-th moment of the law by quadrature of the density (the atom adds
// nothing for p >= 1).
double mp_quadrature_moment(int p, double c, double quad_tol = kDefaultQuadTol);

// Kolmogorov-Smirnov distance between a step ESD and the MP law. Jumps
// are at `points` (any order, any sign) with the given weights; the supremum
// is attained at a jump, so both one-sided limits at every jump are checked.
double ks_distance(std::span<const double> points, std::span<const double> weights, double c,
                   double quad_tol = kDefaultQuadTol);

// ESD of a spectrum sample (zero atom weighted by its exact multiplicity)
// against MP(c).
double ks_distance(const SpectrumSample& sample, double c, double quad_tol = kDefaultQuadTol);

struct MPTableRow {
  double x;
  double pdf;
  double cdf;
  double atom;  // mass of the zero atom on the x = 0 row, otherwise 0
};

// Grid of `points` equally spaced x in [x_min, x_max]; when c < 1 a
// dedicated x = 0 row carrying the atom mass comes first.
std::vector<MPTableRow> mp_table(double c, double x_min, double x_max, int points,
                                 double quad_tol = kDefaultQuadTol);

// Header "x,pdf,cdf,atom", then one row per entry.
void write_mp_table_csv(std::ostream& out, const std::vector<MPTableRow>& rows);

}  // namespace tensorlsd
