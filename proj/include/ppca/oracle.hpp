#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ppca/core.hpp"
#include "ppca/simulate.hpp"

namespace ppca {

/// Probability vector over the 2^(2n) ring configurations, indexed like
/// RingConfig::to_index (site -n is bit 0).
struct ExactDistribution {
  int n = 0;
  std::vector<double> probs;

  static ExactDistribution dirac(const RingConfig& c);
  double total() const;
  double at(const RingConfig& c) const { return probs[c.to_index()]; }
};

/// Applies the transition operator t times. GuardViolation unless 2n <= 16.
ExactDistribution exact_evolve(int n, const Neighborhood& u, double p, const ExactDistribution& mu0,
                               long t);

/// P(tau_n > t) from all ones, through exact_evolve.
double exact_tau_tail(int n, const Neighborhood& u, double p, long t);

/// The same tail by summing over every noise field on the 2n x t box.
/// GuardViolation unless 2n t <= 24.
double enumerate_omega_tau_tail(int n, const Neighborhood& u, double p, long t);

enum class Topology { ring, line };

/// One noise row per time level: omega[t - 1][b] drives the update to time t
/// at site lo + b.
using OmegaBox = std::vector<std::vector<bool>>;

/// connected[t][b]: vertex (lo + b, t) is joined to the base line t = 0 by an
/// open path. On a line the box edges are closed.
struct ReachabilitySet {
  long lo = 0;
  std::size_t width = 0;
  std::vector<std::vector<bool>> connected;

  long steps() const { return static_cast<long>(connected.size()) - 1; }
  bool at(long x, long t) const { return connected[t][x - lo]; }
};

/// Path search down the time axis. For the ring the box is [[-n, n-1]] with
/// n = initial.size() / 2; for the line it is [[lo, lo + width - 1]].
ReachabilitySet reachability(const OmegaBox& omega, const Neighborhood& u, Topology topology,
                             const std::vector<bool>& initial, long lo = 0);

enum class Direction { left, right };

/// Exact P(R^2 >= j + R^0 - 2 s_u) (right) or P(L^2 <= L^0 - 2 s_1 - j)
/// (left) from a massif of length 2 span + 1, by enumerating the random
/// part of the intermediate configuration. GuardViolation for j > 12.
double exact_two_step_displacement(double p, const Neighborhood& u, int j, Direction dir);

/// One-step analogue; GuardViolation for j > 20.
double exact_one_step_displacement(double p, const Neighborhood& u, int j, Direction dir);

struct CylinderLine {
  double p_cyl = 0.0;
  double p_line = 0.0;
  bool holds = false;
};

/// P((0, t) -> base) on the ring S_n versus on Z, from all ones, both by
/// exhaustive enumeration. GuardViolation when either box exceeds 24 bits.
CylinderLine cylinder_vs_line(int n, long t, const Neighborhood& u, double p);

/// True iff, on a shared noise field from all ones, the U trajectory stays
/// below the U' trajectory at every site and time in every replica.
/// PreconditionError unless U is a subset of U'.
bool coupled_domination(const Neighborhood& u, const Neighborhood& u_prime, int n, double p,
                        long T, std::size_t replicas, std::uint64_t master_seed,
                        const SimOptions& opts = {});

}  // namespace ppca
