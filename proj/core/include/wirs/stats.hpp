#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace wirs {

struct GofReport {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
  double tv_distance = 0.0;  // half the L1 distance, on the unpooled bins
  std::uint64_t n_draws = 0;
};

// Pearson chi-squared goodness of fit. Bins with expected count < 5 are
// pooled (ascending by expected count) before computing the statistic;
// dof = pooled bins - 1. Throws DegenerateBinsError if < 2 bins remain,
// BadInputError on size mismatch / zero draws / non-positive probabilities.
GofReport chi_squared_gof(std::span<const std::uint64_t> counts,
                          std::span<const double> expected_probs);

struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // RMS residual in log space
};

// Least-squares slope of (log x, log y). Requires >= 3 pairs, all positive.
ExponentFit exponent_fit(std::span<const double> xs, std::span<const double> ys);

// Half L1 distance between two discrete distributions on the same support.
double tv_distance(std::span<const double> p, std::span<const double> q);

// Regularized upper incomplete gamma Q(a, x); continued fraction / series
// with a 1e-12 convergence target. Exposed for the reference-grid tests.
double gamma_q(double a, double x);

// Upper-tail survival of the chi-squared distribution: P(X >= stat | dof).
double chi_squared_sf(double stat, std::size_t dof);

}  // namespace wirs
