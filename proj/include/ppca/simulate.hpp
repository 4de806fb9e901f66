#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "ppca/core.hpp"
#include "ppca/noise.hpp"
#include "ppca/stats.hpp"

namespace ppca {

struct SimOptions {
  NoiseMode mode = NoiseMode::word_sliced;
  unsigned threads = 1;
};

/// Outcome of one absorption run. An empty `tau` means the run was censored.
struct AbsorptionRecord {
  std::optional<long> tau;
  long t_max = 0;
  std::uint64_t replica_seed = 0;

  bool censored() const { return !tau.has_value(); }
};

/// Runs the ring S_n from all ones until every site is 0 or t_max steps pass.
/// `seed` drives the noise field directly.
AbsorptionRecord run_until_absorbed(int n, const Neighborhood& u, double p, std::uint64_t seed,
                                    long t_max, NoiseMode mode = NoiseMode::word_sliced);

struct TauEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t censored = 0;
  std::size_t replicas = 0;
  /// False when every replica was censored; mean is then meaningless.
  bool available = false;
  /// True when some replica was censored: mean underestimates E[tau].
  bool lower_bound_only = false;
  /// Mean of min(tau, t_max) over all replicas; a lower bound on E[tau].
  double restricted_mean = 0.0;
};

TauEstimate estimate_mean_tau(int n, const Neighborhood& u, double p, std::size_t replicas,
                              std::uint64_t master_seed, long t_max, const SimOptions& opts = {});

/// Fraction of R replicas (started from all ones) whose origin is 1 at time T.
Estimate survival_probability(int n, const Neighborhood& u, double p, long T, std::size_t R,
                              std::uint64_t master_seed, const SimOptions& opts = {});

/// Edge trajectories of one massif of zeros. Sentinels: L = +inf, R = -inf.
struct MassifTrack {
  static constexpr long kPlusInf = std::numeric_limits<long>::max();
  static constexpr long kMinusInf = std::numeric_limits<long>::min();

  std::vector<long> left;
  std::vector<long> right;
  long horizon = 0;

  bool alive(std::size_t t) const { return right[t] != kMinusInf; }
};

/// Configuration rho(x, y): zeros on [[x, y]], ones elsewhere, on a window
/// extending `margin` sites beyond the massif on each side.
LineConfig massif_config(long x, long y, long margin);

/// Follows the massif [[x, y]] of `initial` for T steps of the noise field.
/// Requires y - x >= span. Throws ConeViolation when an edge scan leaves the
/// exact range of the window.
MassifTrack track_massif(const LineConfig& initial, long x, long y, const Neighborhood& u,
                         const NoiseField& noise, long T);

struct EdgeSpeedEstimate {
  double alpha_hat = 0.0;
  double beta_hat = 0.0;
  double gamma_hat = 0.0;
  double alpha_error = 0.0;
  double beta_error = 0.0;
  double gamma_error = 0.0;
  long m_max = 0;
  std::size_t replicas = 0;
  /// Replicas in which a front left the window (see EdgeFronts).
  std::size_t censored = 0;
};

/// Rightmost site reachable at depth m from the half-line {z <= 0} and the
/// leftmost reachable from {z >= 0}, divided by m and averaged over replicas.
/// `source_extent` is how far the source half-lines are materialised; 0 picks
/// 4 (span + 1) m + 64. Censored fronts enter at their bound, so alpha_hat is
/// then an upper bound and beta_hat a lower bound.
EdgeSpeedEstimate edge_speeds(const Neighborhood& u, double p, long m_max, std::size_t replicas,
                              std::uint64_t master_seed, const SimOptions& opts = {},
                              long source_extent = 0);

/// Fraction of replicas in which a single 1 at the origin leaves a non-zero
/// configuration after m steps.
Estimate origin_survival(const Neighborhood& u, double p, long m, std::size_t replicas,
                         std::uint64_t master_seed, const SimOptions& opts = {});

/// Depth-m fronts for one noise field. When every path from the materialised
/// part of a source dies, the true front lies beyond the exact range; it is
/// then reported at the range boundary (r_bar from above, l_bar from below)
/// and flagged.
struct EdgeFronts {
  long r_bar = 0;
  long l_bar = 0;
  bool r_censored = false;
  bool l_censored = false;
};

EdgeFronts edge_fronts(const Neighborhood& u, const NoiseField& noise, long m, long source_extent);

}  // namespace ppca
