#include "ppca/oracle.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "ppca/noise.hpp"
#include "ppca/parallel.hpp"

namespace ppca {

namespace {

/// weights[k] = p^k (1-p)^(bits-k)
std::vector<double> bernoulli_weights(double p, int bits) {
  std::vector<double> w(static_cast<std::size_t>(bits) + 1);
  for (int k = 0; k <= bits; ++k) w[k] = std::pow(p, k) * std::pow(1.0 - p, bits - k);
  return w;
}

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0, 1]");
}

bool initial_massif(long w, long x, long y) { return w < x || w > y; }

// P(every site of [[t_lo, t_hi]] is 0 after `steps` updates from rho(x, y)),
// summing over the random sites of each level.
double massif_window_zero(double p, const Neighborhood& u, long x, long y, long t_lo, long t_hi,
                          int steps) {
  const double q = 1.0 - p;
  const auto& offs = u.offsets();
  auto has_one_in_rho = [&](long z) {
    for (int s : offs) {
      if (initial_massif(z + s, x, y)) return true;
    }
    return false;
  };

  if (steps == 1) {
    std::vector<long> random_sites;
    for (long z = t_lo; z <= t_hi; ++z) {
      if (has_one_in_rho(z)) random_sites.push_back(z);
    }
    const int k = static_cast<int>(random_sites.size());
    const auto w = bernoulli_weights(p, k);
    double total = 0.0;
    for (std::uint64_t open = 0; open < (std::uint64_t{1} << k); ++open) {
      // A random site is 1 at time 1 exactly when it is open.
      if (open == 0) total += w[0];
    }
    return total;
  }

  // Two steps: the targets only see level-1 sites in [[t_lo + s_1, t_hi + s_u]].
  const long w_lo = t_lo + u.min();
  const long w_hi = t_hi + u.max();
  std::vector<long> random_sites;
  for (long z = w_lo; z <= w_hi; ++z) {
    if (has_one_in_rho(z)) random_sites.push_back(z);
  }
  const int k = static_cast<int>(random_sites.size());
  const auto w = bernoulli_weights(p, k);
  std::vector<char> level(static_cast<std::size_t>(w_hi - w_lo + 1));
  double total = 0.0;
  for (std::uint64_t open = 0; open < (std::uint64_t{1} << k); ++open) {
    std::fill(level.begin(), level.end(), 0);
    for (int i = 0; i < k; ++i) {
      if ((open >> i) & 1U) level[random_sites[i] - w_lo] = 1;
    }
    double stay_zero = 1.0;
    for (long z = t_lo; z <= t_hi; ++z) {
      bool fed = false;
      for (int s : offs) fed = fed || level[z + s - w_lo] != 0;
      if (fed) stay_zero *= q;
    }
    total += w[std::popcount(open)] * stay_zero;
  }
  return total;
}

}  // namespace

ExactDistribution ExactDistribution::dirac(const RingConfig& c) {
  if (c.size() > 16) throw GuardViolation("exact distributions need 2n <= 16");
  ExactDistribution d;
  d.n = c.half_width();
  d.probs.assign(std::size_t{1} << c.size(), 0.0);
  d.probs[c.to_index()] = 1.0;
  return d;
}

double ExactDistribution::total() const {
  double s = 0.0;
  for (double v : probs) s += v;
  return s;
}

ExactDistribution exact_evolve(int n, const Neighborhood& u, double p, const ExactDistribution& mu0,
                               long t) {
  check_probability(p);
  if (n < 1 || 2 * n > 16) throw GuardViolation("exact_evolve needs 1 <= n and 2n <= 16");
  if (t < 0) throw DomainError("exact_evolve: t must be >= 0");
  const int sites = 2 * n;
  const std::size_t states = std::size_t{1} << sites;
  if (mu0.n != n || mu0.probs.size() != states) {
    throw PreconditionError("exact_evolve: initial distribution has the wrong size");
  }

  // Sites with a 1 among their neighbours become 1 w.p. p, the rest become 0.
  std::vector<std::uint32_t> active(states, 0);
  std::vector<std::vector<int>> nbrs(sites);
  for (int b = 0; b < sites; ++b) {
    for (int k : periodic_neighbors(b - n, n, u)) nbrs[b].push_back(k + n);
  }
  for (std::size_t c = 0; c < states; ++c) {
    std::uint32_t a = 0;
    for (int b = 0; b < sites; ++b) {
      for (int k : nbrs[b]) {
        if ((c >> k) & 1U) {
          a |= std::uint32_t{1} << b;
          break;
        }
      }
    }
    active[c] = a;
  }
  std::vector<std::vector<double>> weights(sites + 1);
  for (int k = 0; k <= sites; ++k) weights[k] = bernoulli_weights(p, k);

  ExactDistribution mu = mu0;
  std::vector<double> next(states);
  for (long step = 0; step < t; ++step) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t c = 0; c < states; ++c) {
      const double m = mu.probs[c];
      if (m == 0.0) continue;
      const std::uint32_t a = active[c];
      const auto& w = weights[std::popcount(a)];
      std::uint32_t sub = a;
      for (;;) {
        next[sub] += m * w[std::popcount(sub)];
        if (sub == 0) break;
        sub = (sub - 1) & a;
      }
    }
    mu.probs.swap(next);
  }
  return mu;
}

double exact_tau_tail(int n, const Neighborhood& u, double p, long t) {
  const auto mu = exact_evolve(n, u, p, ExactDistribution::dirac(RingConfig::all_ones(n)), t);
  return 1.0 - mu.probs[0];
}

double enumerate_omega_tau_tail(int n, const Neighborhood& u, double p, long t) {
  check_probability(p);
  if (n < 1 || t < 0 || 2L * n * t > 24) {
    throw GuardViolation("enumerate_omega_tau_tail needs 2n t <= 24");
  }
  if (t == 0) return 1.0;
  const int row_bits = 2 * n;
  const int bits = static_cast<int>(row_bits * t);
  const auto w = bernoulli_weights(p, bits);
  const std::uint64_t row_mask = (std::uint64_t{1} << row_bits) - 1;

  RingStepper stepper(n, u);
  double total = 0.0;
  for (std::uint64_t omega = 0; omega < (std::uint64_t{1} << bits); ++omega) {
    RingConfig c = RingConfig::all_ones(n);
    bool alive = true;
    for (long k = 0; k < t && alive; ++k) {
      const std::uint64_t row = (omega >> (k * row_bits)) & row_mask;
      stepper.advance(c, std::span<const std::uint64_t>(&row, 1));
      alive = !c.is_all_zero();
    }
    if (alive) total += w[std::popcount(omega)];
  }
  return total;
}

ReachabilitySet reachability(const OmegaBox& omega, const Neighborhood& u, Topology topology,
                             const std::vector<bool>& initial, long lo) {
  ReachabilitySet r;
  r.width = initial.size();
  if (r.width == 0) throw PreconditionError("reachability: empty box");
  int n = 0;
  if (topology == Topology::ring) {
    if (r.width % 2 != 0) throw PreconditionError("reachability: ring box needs 2n sites");
    n = static_cast<int>(r.width / 2);
    lo = -n;
  }
  r.lo = lo;
  r.connected.push_back(initial);
  for (std::size_t t = 1; t <= omega.size(); ++t) {
    const auto& row = omega[t - 1];
    if (row.size() != r.width) throw PreconditionError("reachability: noise row width mismatch");
    const auto& below = r.connected[t - 1];
    std::vector<bool> level(r.width, false);
    for (std::size_t b = 0; b < r.width; ++b) {
      if (!row[b]) continue;
      const long x = lo + static_cast<long>(b);
      bool hit = false;
      if (topology == Topology::ring) {
        for (int k : periodic_neighbors(static_cast<int>(x), n, u)) hit = hit || below[k + n];
      } else {
        for (int s : u.offsets()) {
          const long k = x + s - lo;
          if (k >= 0 && k < static_cast<long>(r.width)) hit = hit || below[k];
        }
      }
      level[b] = hit;
    }
    r.connected.push_back(std::move(level));
  }
  return r;
}

double exact_two_step_displacement(double p, const Neighborhood& u, int j, Direction dir) {
  check_probability(p);
  if (j < 0) throw DomainError("exact_two_step_displacement: j must be >= 0");
  if (j > 12) throw GuardViolation("exact_two_step_displacement needs j <= 12");
  const long x = 0;
  const long y = 2L * u.span();
  const long s1 = u.min();
  const long su = u.max();
  if (dir == Direction::right) return massif_window_zero(p, u, x, y, x - 2 * s1, y - 2 * su + j, 2);
  return massif_window_zero(p, u, x, y, x - 2 * s1 - j, y - 2 * su, 2);
}

double exact_one_step_displacement(double p, const Neighborhood& u, int j, Direction dir) {
  check_probability(p);
  if (j < 0) throw DomainError("exact_one_step_displacement: j must be >= 0");
  if (j > 20) throw GuardViolation("exact_one_step_displacement needs j <= 20");
  const long x = 0;
  const long y = 2L * u.span();
  const long s1 = u.min();
  const long su = u.max();
  if (dir == Direction::right) return massif_window_zero(p, u, x, y, x - s1, y - su + j, 1);
  return massif_window_zero(p, u, x, y, x - s1 - j, y - su, 1);
}

CylinderLine cylinder_vs_line(int n, long t, const Neighborhood& u, double p) {
  check_probability(p);
  if (n < 1 || t < 0) throw DomainError("cylinder_vs_line: need n >= 1, t >= 0");
  const long span = u.span();
  long cone_bits = 0;
  for (long k = 0; k < t; ++k) cone_bits += k * span + 1;
  if (2L * n * t > 24 || cone_bits > 24) {
    throw GuardViolation("cylinder_vs_line: enumeration box exceeds 24 bits");
  }
  CylinderLine r;
  if (t == 0) {
    r.p_cyl = r.p_line = 1.0;
    r.holds = true;
    return r;
  }

  {
    const int row_bits = 2 * n;
    const int bits = static_cast<int>(row_bits * t);
    const auto w = bernoulli_weights(p, bits);
    const std::uint64_t row_mask = (std::uint64_t{1} << row_bits) - 1;
    RingStepper stepper(n, u);
    for (std::uint64_t omega = 0; omega < (std::uint64_t{1} << bits); ++omega) {
      RingConfig c = RingConfig::all_ones(n);
      for (long k = 0; k < t; ++k) {
        const std::uint64_t row = (omega >> (k * row_bits)) & row_mask;
        stepper.advance(c, std::span<const std::uint64_t>(&row, 1));
      }
      if (c.at(0)) r.p_cyl += w[std::popcount(omega)];
    }
  }

  {
    // Depth k below (0, t) holds sites [[k s_1, k s_u]]; depth t is the all-ones base.
    const auto& offs = u.offsets();
    std::vector<long> offset(static_cast<std::size_t>(t) + 1, 0);
    for (long k = 0; k < t; ++k) offset[k + 1] = offset[k] + k * span + 1;
    const int bits = static_cast<int>(cone_bits);
    const auto w = bernoulli_weights(p, bits);
    std::vector<char> below;
    std::vector<char> here;
    for (std::uint64_t omega = 0; omega < (std::uint64_t{1} << bits); ++omega) {
      below.assign(static_cast<std::size_t>(t * span + 1), 1);
      for (long k = t - 1; k >= 0; --k) {
        const long base_lo = k * u.min();
        const long lower_lo = (k + 1) * u.min();
        here.assign(static_cast<std::size_t>(k * span + 1), 0);
        for (long i = 0; i <= k * span; ++i) {
          if (!((omega >> (offset[k] + i)) & 1U)) continue;
          const long xk = base_lo + i;
          for (int s : offs) {
            if (below[xk + s - lower_lo]) {
              here[i] = 1;
              break;
            }
          }
        }
        below.swap(here);
      }
      if (below[0]) r.p_line += w[std::popcount(omega)];
    }
  }
  r.holds = r.p_cyl <= r.p_line + 1e-12;
  return r;
}

bool coupled_domination(const Neighborhood& u, const Neighborhood& u_prime, int n, double p,
                        long T, std::size_t replicas, std::uint64_t master_seed,
                        const SimOptions& opts) {
  check_probability(p);
  if (!u.subset_of(u_prime)) {
    throw PreconditionError("coupled_domination: {" + u.str() + "} is not a subset of {" +
                            u_prime.str() + "}");
  }
  std::vector<char> ok(replicas, 1);
  parallel_for(replicas, opts.threads, [&](std::size_t r) {
    const NoiseField noise(p, replica_seed(master_seed, r), opts.mode);
    RingConfig a = RingConfig::all_ones(n);
    RingConfig b = RingConfig::all_ones(n);
    RingStepper sa(n, u);
    RingStepper sb(n, u_prime);
    std::vector<std::uint64_t> row(a.words().size());
    for (long t = 1; t <= T; ++t) {
      noise.fill_row(t - 1, -n, a.size(), row);
      sa.advance(a, row);
      sb.advance(b, row);
      if (!a.leq(b)) {
        ok[r] = 0;
        return;
      }
    }
  });
  for (char v : ok) {
    if (!v) return false;
  }
  return true;
}

}  // namespace ppca
