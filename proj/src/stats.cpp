#include "ppca/stats.hpp"

#include <cmath>

#include "ppca/error.hpp"

namespace ppca {

Estimate mean_and_error(std::span<const double> samples) {
  Estimate e;
  if (samples.empty()) return e;
  double sum = 0.0;
  for (double s : samples) sum += s;
  const double n = static_cast<double>(samples.size());
  e.value = sum / n;
  if (samples.size() > 1) {
    double ss = 0.0;
    for (double s : samples) ss += (s - e.value) * (s - e.value);
    e.std_error = std::sqrt(ss / (n - 1.0) / n);
  }
  return e;
}

Estimate proportion(std::size_t successes, std::size_t trials) {
  Estimate e;
  if (trials == 0) return e;
  const double n = static_cast<double>(trials);
  e.value = static_cast<double>(successes) / n;
  e.std_error = std::sqrt(e.value * (1.0 - e.value) / n);
  return e;
}

LinearFit fit_linear(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw PreconditionError("fit_linear: x and y differ in length");
  const std::size_t n = x.size();
  if (n < 2) throw PreconditionError("fit_linear: need at least two points");
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw PreconditionError("fit_linear: x values are all equal");
  LinearFit f;
  f.points = n;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    rss += r * r;
  }
  f.r2 = syy > 0.0 ? 1.0 - rss / syy : 1.0;
  const double dn = static_cast<double>(n);
  f.adjusted_r2 = n > 2 ? 1.0 - (1.0 - f.r2) * (dn - 1.0) / (dn - 2.0) : f.r2;
  return f;
}

}  // namespace ppca
