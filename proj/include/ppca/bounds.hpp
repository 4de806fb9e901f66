#pragma once

#include <map>
#include <vector>

#include "ppca/core.hpp"

namespace ppca {

// All bounds depend on U only through its span s_u - s_1.

/// Exponent of the second term of phi.
enum class PhiExponent {
  /// (1-p)^(2 span + 2); gives p2 = 0.670, 0.505, 0.407, 0.343 for spans 1..4.
  two_span_plus_two,
  /// (1-p)^(2 span)
  two_span,
};

/// 2 / (2 + span)
double p1(const Neighborhood& u);

/// ((1-p)^6 + (1-p)^e) / (p (2 - p)). DomainError unless 0 < p < 1.
double phi(double p, const Neighborhood& u, PhiExponent variant = PhiExponent::two_span_plus_two);

/// Root of p - p1 / (1 - phi(p) / (span + 2)) on (p1, 1), by bisection.
/// SolverError if the bracket does not change sign.
double solve_p2(const Neighborhood& u, double tol = 1e-10,
                PhiExponent variant = PhiExponent::two_span_plus_two);

/// (1-p)^j, the one-step tail of either massif edge.
double one_step_tail(double p, const Neighborhood& u, int j);

/// E[pi] = 2(1-p)/p - 2 s_u + phi(p);  E[xi] = -2(1-p)/p - 2 s_1 - phi(p).
double expectation_pi(double p, const Neighborhood& u, PhiExponent variant = PhiExponent::two_span_plus_two);
double expectation_xi(double p, const Neighborhood& u, PhiExponent variant = PhiExponent::two_span_plus_two);

/// Lower bound on P(R^2 >= j + R^0 - 2 s_u). Evaluated as printed, so values
/// outside [0, 1] are possible for j > span.
double two_step_bound(double p, const Neighborhood& u, int j);

struct BoundsReport {
  int span = 0;
  double p1 = 0.0;
  double p2 = 0.0;
  double p = 0.0;
  double e_pi = 0.0;
  double e_xi = 0.0;
  /// j -> two_step_bound(p, U, j) for j = 0..j_max.
  std::map<int, double> bound_table;
};

/// Evaluates the expectations and the bound table at `p` (p2 when p <= 0).
BoundsReport bounds_report(const Neighborhood& u, double p = 0.0, int j_max = -1,
                           PhiExponent variant = PhiExponent::two_span_plus_two);

}  // namespace ppca
