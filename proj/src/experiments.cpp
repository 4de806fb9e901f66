#include "ppca/experiments.hpp"

#include <algorithm>
#include <cmath>

namespace ppca {

std::vector<double> make_grid(double start, double stop, double step) {
  if (!(step > 0.0)) throw DomainError("grid step must be positive");
  if (stop < start) throw DomainError("grid stop lies below start");
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    // Snap to 12 decimals so 0.45 + 3 * 0.005 prints as 0.465.
    grid.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
  }
  return grid;
}

std::vector<BoundsRow> bounds_table(const std::vector<Neighborhood>& list, PhiExponent variant) {
  std::vector<BoundsRow> rows;
  rows.reserve(list.size());
  for (const auto& u : list) {
    rows.push_back({u, u.span(), p1(u), solve_p2(u, 1e-10, variant)});
  }
  return rows;
}

std::optional<double> SurvivalCurve::crossing(double threshold) const {
  for (const auto& r : rows) {
    if (r.p_hat > threshold) return r.p;
  }
  return std::nullopt;
}

namespace {

void require_sorted(const std::vector<double>& grid) {
  if (grid.empty()) throw PreconditionError("empty p grid");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw PreconditionError("p grid must be strictly increasing");
  }
}

}  // namespace

SurvivalCurve p_sweep(const Neighborhood& u, int n, long T, std::size_t R,
                      const std::vector<double>& p_grid, std::uint64_t master_seed,
                      const SimOptions& opts) {
  require_sorted(p_grid);
  SurvivalCurve c{u, n, T, R, master_seed, {}};
  for (double p : p_grid) {
    const Estimate e = survival_probability(n, u, p, T, R, master_seed, opts);
    c.rows.push_back({p, e.value, e.std_error});
  }
  return c;
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::logarithmic:
      return "logarithmic";
    case Regime::exponential:
      return "exponential";
    case Regime::degenerate:
      break;
  }
  return "degenerate";
}

ScalingTable tau_scaling(const Neighborhood& u, double p, const std::vector<int>& n_list,
                         std::size_t replicas, long t_max, std::uint64_t master_seed,
                         const SimOptions& opts) {
  if (n_list.empty()) throw PreconditionError("empty n list");
  for (std::size_t i = 1; i < n_list.size(); ++i) {
    if (n_list[i] <= n_list[i - 1]) throw PreconditionError("n list must be strictly increasing");
  }
  ScalingTable table{u, p, replicas, t_max, master_seed, {}, {}, {}, Regime::degenerate, false};
  for (int n : n_list) {
    table.rows.push_back({n, estimate_mean_tau(n, u, p, replicas, master_seed, t_max, opts)});
  }

  std::vector<double> log_n;
  std::vector<double> n_value;
  std::vector<double> mean;
  std::vector<double> log_mean;
  for (const auto& r : table.rows) {
    if (!r.tau.available || r.tau.censored > 0) continue;
    log_n.push_back(std::log(static_cast<double>(r.n)));
    n_value.push_back(static_cast<double>(r.n));
    mean.push_back(r.tau.mean);
    log_mean.push_back(std::log(r.tau.mean));
  }
  const bool flat = std::adjacent_find(mean.begin(), mean.end(), std::not_equal_to<>()) == mean.end();
  if (mean.size() < 2 || flat) return table;
  table.log_fit = fit_linear(log_n, mean);
  table.exp_fit = fit_linear(n_value, log_mean);

  // Censored rows never enter a fit; they can only show that the log model
  // undershoots.
  for (const auto& r : table.rows) {
    if (r.tau.censored == 0) continue;
    const double predicted =
        table.log_fit->intercept + table.log_fit->slope * std::log(static_cast<double>(r.n));
    if (r.tau.restricted_mean > predicted) table.log_refuted_by_censored = true;
  }
  const bool exp_better = table.exp_fit->adjusted_r2 > table.log_fit->adjusted_r2;
  table.regime = exp_better || table.log_refuted_by_censored ? Regime::exponential
                                                              : Regime::logarithmic;
  return table;
}

GammaScan gamma_scan(const Neighborhood& u, const std::vector<double>& p_grid, long m_max,
                     std::size_t replicas, std::uint64_t master_seed, const SimOptions& opts) {
  require_sorted(p_grid);
  GammaScan scan{u, m_max, replicas, master_seed, {}, true, std::nullopt};
  for (double p : p_grid) {
    const auto e = edge_speeds(u, p, m_max, replicas, master_seed, opts);
    scan.rows.push_back({p, e.gamma_hat, e.gamma_error, e.alpha_hat, e.beta_hat});
  }
  bool seen_positive = false;
  for (const auto& r : scan.rows) {
    if (r.gamma_hat > 2.0 * r.std_error) {
      seen_positive = true;
      if (!scan.crossing) scan.crossing = r.p;
    } else if (seen_positive && r.gamma_hat < -2.0 * r.std_error) {
      scan.monotone = false;
    }
  }
  if (!scan.monotone) scan.crossing.reset();
  return scan;
}

DecayFit subcritical_decay(const Neighborhood& u, double p, const std::vector<long>& m_list,
                           std::size_t replicas, std::uint64_t master_seed,
                           const SimOptions& opts) {
  if (m_list.empty()) throw PreconditionError("empty m list");
  DecayFit d{u, p, replicas, master_seed, {}, std::nullopt, 0.0, 0, false, false};
  std::vector<double> ms;
  std::vector<double> logs;
  for (long m : m_list) {
    const Estimate e = origin_survival(u, p, m, replicas, master_seed, opts);
    DecayRow row{m, e.value, e.std_error, e.value > 0.0};
    if (row.used) {
      ms.push_back(static_cast<double>(m));
      logs.push_back(std::log(e.value));
    } else {
      ++d.dropped;
    }
    d.rows.push_back(row);
  }
  const bool distinct_m =
      ms.size() >= 2 && std::adjacent_find(ms.begin(), ms.end(), std::not_equal_to<>()) != ms.end();
  if (!distinct_m) {
    d.degenerate = true;
    return d;
  }
  d.fit = fit_linear(ms, logs);
  d.h_hat = -d.fit->slope;
  d.degenerate =
      std::adjacent_find(logs.begin(), logs.end(), std::not_equal_to<>()) == logs.end();
  d.accepted = !d.degenerate && d.h_hat > 0.0 && d.fit->r2 > 0.9;
  return d;
}

}  // namespace ppca
