#include "ppca/bounds.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>
#include <string>

namespace ppca {

namespace {

void require_open_unit(double p, const char* what) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError(std::string(what) + ": p must lie in (0, 1)");
}

void require_closed_unit(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError(std::string(what) + ": p must lie in [0, 1]");
}

}  // namespace

double p1(const Neighborhood& u) { return 2.0 / (2.0 + u.span()); }

double phi(double p, const Neighborhood& u, PhiExponent variant) {
  require_open_unit(p, "phi");
  const double q = 1.0 - p;
  const int e = variant == PhiExponent::two_span_plus_two ? 2 * u.span() + 2 : 2 * u.span();
  return (std::pow(q, 6) + std::pow(q, e)) / (p * (2.0 - p));
}

double solve_p2(const Neighborhood& u, double tol, PhiExponent variant) {
  if (!(tol > 0.0)) throw DomainError("solve_p2: tolerance must be positive");
  const double lower = p1(u);
  const double span2 = u.span() + 2.0;
  auto g = [&](double p) { return p - lower / (1.0 - phi(p, u, variant) / span2); };

  const double a = lower + 1e-9;
  const double b = 1.0 - 1e-9;
  const double ga = g(a);
  const double gb = g(b);
  if (!(ga < 0.0 && gb > 0.0) && !(ga > 0.0 && gb < 0.0)) {
    throw SolverError("solve_p2: g does not change sign on (p1, 1) for U = {" + u.str() + "}");
  }
  auto converged = [&](double lo, double hi) {
    return hi - lo < tol && std::fabs(g(0.5 * (lo + hi))) < tol;
  };
  std::uintmax_t iterations = 200;
  const auto [lo, hi] = boost::math::tools::bisect(g, a, b, converged, iterations);
  return 0.5 * (lo + hi);
}

double one_step_tail(double p, const Neighborhood& /*u*/, int j) {
  require_closed_unit(p, "one_step_tail");
  if (j < 0) throw DomainError("one_step_tail: j must be >= 0");
  return std::pow(1.0 - p, j);
}

double expectation_pi(double p, const Neighborhood& u, PhiExponent variant) {
  require_open_unit(p, "expectation_pi");
  return 2.0 * (1.0 - p) / p - 2.0 * u.max() + phi(p, u, variant);
}

double expectation_xi(double p, const Neighborhood& u, PhiExponent variant) {
  require_open_unit(p, "expectation_xi");
  return -2.0 * (1.0 - p) / p - 2.0 * u.min() - phi(p, u, variant);
}

double two_step_bound(double p, const Neighborhood& u, int j) {
  require_closed_unit(p, "two_step_bound");
  if (j < 0) throw DomainError("two_step_bound: j must be >= 0");
  const double q = 1.0 - p;
  const int span = u.span();
  if (j == 0) return 1.0;
  if (j == 1) return 1.0 - p * p;
  if (j == 2) return q * q * (1.0 + 2.0 * p);
  const double qj = std::pow(q, j);
  if (j <= span) return j * p * qj + qj + std::pow(q, 2 * j);
  // p (1-p)^(j+span) (j - span - 1/p) == (1-p)^(j+span) (p (j - span) - 1)
  return j * p * qj + qj + std::pow(q, j + span) * (p * (j - span) - 1.0) +
         2.0 * std::pow(q, 2 * j);
}

BoundsReport bounds_report(const Neighborhood& u, double p, int j_max, PhiExponent variant) {
  BoundsReport r;
  r.span = u.span();
  r.p1 = p1(u);
  r.p2 = solve_p2(u, 1e-10, variant);
  r.p = p > 0.0 ? p : r.p2;
  r.e_pi = expectation_pi(r.p, u, variant);
  r.e_xi = expectation_xi(r.p, u, variant);
  if (j_max < 0) j_max = r.span + 3;
  for (int j = 0; j <= j_max; ++j) r.bound_table[j] = two_step_bound(r.p, u, j);
  return r;
}

}  // namespace ppca
