#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ppca/bounds.hpp"
#include "ppca/simulate.hpp"
#include "ppca/stats.hpp"

namespace ppca {

/// Inclusive grid start, start + step, ..., stop (stop kept within 1e-9 step).
std::vector<double> make_grid(double start, double stop, double step);

struct BoundsRow {
  Neighborhood u;
  int span = 0;
  double p1 = 0.0;
  double p2 = 0.0;
};

std::vector<BoundsRow> bounds_table(const std::vector<Neighborhood>& list,
                                    PhiExponent variant = PhiExponent::two_span_plus_two);

struct SurvivalRow {
  double p = 0.0;
  double p_hat = 0.0;
  double std_error = 0.0;
};

struct SurvivalCurve {
  Neighborhood u{{0}};
  int n = 0;
  long T = 0;
  std::size_t R = 0;
  std::uint64_t master_seed = 0;
  std::vector<SurvivalRow> rows;

  /// First grid p with p_hat > threshold.
  std::optional<double> crossing(double threshold = 0.05) const;
};

/// The same master seed is used at every grid point, so curves are coupled in p.
SurvivalCurve p_sweep(const Neighborhood& u, int n, long T, std::size_t R,
                      const std::vector<double>& p_grid, std::uint64_t master_seed,
                      const SimOptions& opts = {});

struct ScalingRow {
  int n = 0;
  TauEstimate tau;
};

enum class Regime { logarithmic, exponential, degenerate };

const char* regime_name(Regime r);

struct ScalingTable {
  Neighborhood u{{0}};
  double p = 0.0;
  std::size_t replicas = 0;
  long t_max = 0;
  std::uint64_t master_seed = 0;
  std::vector<ScalingRow> rows;
  /// mean_tau ~ a + b log n, over rows without censoring.
  std::optional<LinearFit> log_fit;
  /// log(mean_tau) ~ a + b n, over rows without censoring.
  std::optional<LinearFit> exp_fit;
  Regime regime = Regime::degenerate;
  /// Some censored row has a restricted mean above the log-model prediction,
  /// so growth is faster than logarithmic.
  bool log_refuted_by_censored = false;
};

ScalingTable tau_scaling(const Neighborhood& u, double p, const std::vector<int>& n_list,
                         std::size_t replicas, long t_max, std::uint64_t master_seed,
                         const SimOptions& opts = {});

struct GammaRow {
  double p = 0.0;
  double gamma_hat = 0.0;
  double std_error = 0.0;
  double alpha_hat = 0.0;
  double beta_hat = 0.0;
};

struct GammaScan {
  Neighborhood u{{0}};
  long m_max = 0;
  std::size_t replicas = 0;
  std::uint64_t master_seed = 0;
  std::vector<GammaRow> rows;
  /// No significantly negative gamma after a significantly positive one.
  bool monotone = true;
  /// Smallest grid p with gamma_hat > 2 stderr, only when monotone.
  std::optional<double> crossing;
};

GammaScan gamma_scan(const Neighborhood& u, const std::vector<double>& p_grid, long m_max,
                     std::size_t replicas, std::uint64_t master_seed, const SimOptions& opts = {});

struct DecayRow {
  long m = 0;
  double p_hat = 0.0;
  double std_error = 0.0;
  bool used = false;
};

struct DecayFit {
  Neighborhood u{{0}};
  double p = 0.0;
  std::size_t replicas = 0;
  std::uint64_t master_seed = 0;
  std::vector<DecayRow> rows;
  /// log P_hat = intercept - h m over rows with at least one survivor.
  std::optional<LinearFit> fit;
  double h_hat = 0.0;
  /// Rows dropped because nothing survived.
  std::size_t dropped = 0;
  /// Fewer than two usable rows, or no variation.
  bool degenerate = false;
  /// Exponential decay confirmed: h_hat > 0 and R^2 > 0.9.
  bool accepted = false;
};

DecayFit subcritical_decay(const Neighborhood& u, double p, const std::vector<long>& m_list,
                           std::size_t replicas, std::uint64_t master_seed,
                           const SimOptions& opts = {});

}  // namespace ppca
