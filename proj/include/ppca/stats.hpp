#pragma once

#include <cstddef>
#include <span>

namespace ppca {

/// A Monte Carlo estimate and its standard error.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Sample mean with standard error of the mean (n - 1 denominator).
Estimate mean_and_error(std::span<const double> samples);

/// Binomial proportion successes / trials with sqrt(P(1-P)/trials).
Estimate proportion(std::size_t successes, std::size_t trials);

/// Ordinary least squares y = intercept + slope * x.
struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
  double r2 = 0.0;
  double adjusted_r2 = 0.0;
  std::size_t points = 0;
};

/// Requires at least two points with distinct x. With constant y the fit is
/// exact and r2 is reported as 1.
LinearFit fit_linear(std::span<const double> x, std::span<const double> y);

}  // namespace ppca
