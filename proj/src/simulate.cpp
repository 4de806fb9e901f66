#include "ppca/simulate.hpp"

#include <cstdlib>
#include <stdexcept>

#include "ppca/bits.hpp"
#include "ppca/parallel.hpp"

namespace ppca {

namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0, 1]");
}

}  // namespace

AbsorptionRecord run_until_absorbed(int n, const Neighborhood& u, double p, std::uint64_t seed,
                                    long t_max, NoiseMode mode) {
  check_probability(p);
  if (n < 1) throw PreconditionError("n must be >= 1");
  if (t_max < 1) throw PreconditionError("t_max must be >= 1");
  AbsorptionRecord rec;
  rec.t_max = t_max;
  rec.replica_seed = seed;

  const NoiseField noise(p, seed, mode);
  RingConfig config = RingConfig::all_ones(n);
  RingStepper stepper(n, u);
  std::vector<std::uint64_t> row(config.words().size());
  for (long t = 1; t <= t_max; ++t) {
    noise.fill_row(t - 1, -n, config.size(), row);
    stepper.advance(config, row);
    if (config.is_all_zero()) {
      rec.tau = t;
      return rec;
    }
  }
  return rec;
}

TauEstimate estimate_mean_tau(int n, const Neighborhood& u, double p, std::size_t replicas,
                              std::uint64_t master_seed, long t_max, const SimOptions& opts) {
  if (replicas < 1) throw PreconditionError("replicas must be >= 1");
  std::vector<AbsorptionRecord> records(replicas);
  parallel_for(replicas, opts.threads, [&](std::size_t r) {
    records[r] = run_until_absorbed(n, u, p, replica_seed(master_seed, r), t_max, opts.mode);
  });
  TauEstimate est;
  est.replicas = replicas;
  std::vector<double> taus;
  double restricted = 0.0;
  for (const auto& rec : records) {
    restricted += static_cast<double>(rec.censored() ? rec.t_max : *rec.tau);
    if (rec.censored()) {
      ++est.censored;
    } else {
      taus.push_back(static_cast<double>(*rec.tau));
    }
  }
  est.restricted_mean = restricted / static_cast<double>(replicas);
  est.available = !taus.empty();
  est.lower_bound_only = est.censored > 0;
  if (est.available) {
    const Estimate m = mean_and_error(taus);
    est.mean = m.value;
    est.std_error = m.std_error;
  }
  return est;
}

Estimate survival_probability(int n, const Neighborhood& u, double p, long T, std::size_t R,
                              std::uint64_t master_seed, const SimOptions& opts) {
  check_probability(p);
  if (T < 1 || R < 1 || n < 1) throw PreconditionError("survival needs n, T, R >= 1");
  std::vector<unsigned char> origin_on(R, 0);
  parallel_for(R, opts.threads, [&](std::size_t r) {
    const NoiseField noise(p, replica_seed(master_seed, r), opts.mode);
    RingConfig config = RingConfig::all_ones(n);
    RingStepper stepper(n, u);
    std::vector<std::uint64_t> row(config.words().size());
    for (long t = 1; t <= T; ++t) {
      noise.fill_row(t - 1, -n, config.size(), row);
      stepper.advance(config, row);
      if (config.is_all_zero()) return;
    }
    origin_on[r] = config.at(0) ? 1 : 0;
  });
  std::size_t hits = 0;
  for (auto v : origin_on) hits += v;
  return proportion(hits, R);
}

LineConfig massif_config(long x, long y, long margin) {
  if (y < x) throw PreconditionError("massif needs x <= y");
  if (margin < 1) throw PreconditionError("massif window margin must be >= 1");
  LineConfig c(x - margin, y + margin, true, true);
  c.fill(x, y, false);
  return c;
}

MassifTrack track_massif(const LineConfig& initial, long x, long y, const Neighborhood& u,
                         const NoiseField& noise, long T) {
  const long span = u.span();
  if (y - x < span) throw PreconditionError("massif shorter than the neighbourhood span");
  if (T < 0) throw PreconditionError("horizon must be >= 0");
  for (long z = x; z <= y; ++z) {
    if (initial.value(z)) throw PreconditionError("initial configuration has a 1 inside the massif");
  }

  MassifTrack track;
  track.horizon = T;
  track.left.reserve(static_cast<std::size_t>(T) + 1);
  track.right.reserve(static_cast<std::size_t>(T) + 1);
  track.left.push_back(x);
  track.right.push_back(y);

  LineConfig config = initial;
  LineStepper stepper(config.size(), u);
  std::vector<std::uint64_t> row(config.words().size());
  bool alive = true;
  for (long t = 1; t <= T; ++t) {
    if (!alive) {
      track.left.push_back(MassifTrack::kPlusInf);
      track.right.push_back(MassifTrack::kMinusInf);
      continue;
    }
    noise.fill_row(t - 1, config.lo(), config.size(), row);
    stepper.advance(config, row);

    const long l_prev = track.left.back();
    const long r_prev = track.right.back();
    // [[L - s_1, R - s_u]] is zero for every realisation while the massif is alive.
    long r = l_prev - u.min();
    if (config.value(r)) throw std::logic_error("massif interior not absorbed");
    while (!config.value(r + 1)) ++r;
    long l = r_prev - u.max();
    while (!config.value(l - 1)) --l;

    track.left.push_back(l);
    track.right.push_back(r);
    alive = r - l >= span;
  }
  return track;
}

EdgeFronts edge_fronts(const Neighborhood& u, const NoiseField& noise, long m, long source_extent) {
  if (m < 1) throw PreconditionError("depth must be >= 1");
  if (source_extent < 0) throw PreconditionError("source extent must be >= 0");
  // Paths descend by an offset of U per level, which is the forward update
  // under the reflected neighbourhood.
  const Neighborhood dual = u.reflected();
  const long reach = (std::labs(u.min()) + std::labs(u.max())) * m + 1;
  std::vector<std::uint64_t> row;
  EdgeFronts f;

  auto evolve = [&](LineConfig& c) {
    LineStepper stepper(c.size(), dual);
    row.assign(c.words().size(), 0);
    for (long k = 1; k <= m; ++k) {
      noise.fill_row(k - 1, c.lo(), c.size(), row);
      stepper.advance(c, row);
    }
  };

  {
    LineConfig c(-source_extent, reach, false, true, false);
    c.fill(-source_extent, 0, true);
    evolve(c);
    const auto right = c.rightmost_one();
    if (right && *right > c.valid_hi()) throw ConeViolation("edge_fronts: right margin too small");
    if (right && *right >= c.valid_lo()) {
      f.r_bar = *right;
    } else {
      f.r_bar = c.valid_lo() - 1;
      f.r_censored = true;
    }
  }
  {
    LineConfig c(-reach, source_extent, false, false, true);
    c.fill(0, source_extent, true);
    evolve(c);
    const auto left = c.leftmost_one();
    if (left && *left < c.valid_lo()) throw ConeViolation("edge_fronts: left margin too small");
    if (left && *left <= c.valid_hi()) {
      f.l_bar = *left;
    } else {
      f.l_bar = c.valid_hi() + 1;
      f.l_censored = true;
    }
  }
  return f;
}

EdgeSpeedEstimate edge_speeds(const Neighborhood& u, double p, long m_max, std::size_t replicas,
                              std::uint64_t master_seed, const SimOptions& opts,
                              long source_extent) {
  check_probability(p);
  if (m_max < 1 || replicas < 1) throw PreconditionError("edge_speeds needs m_max, replicas >= 1");
  if (source_extent <= 0) source_extent = 4 * (u.span() + 1) * m_max + 64;

  std::vector<double> alpha(replicas);
  std::vector<double> beta(replicas);
  std::vector<double> gamma(replicas);
  std::vector<char> censored(replicas, 0);
  parallel_for(replicas, opts.threads, [&](std::size_t r) {
    const NoiseField noise(p, replica_seed(master_seed, r), opts.mode);
    const EdgeFronts f = edge_fronts(u, noise, m_max, source_extent);
    const double m = static_cast<double>(m_max);
    alpha[r] = static_cast<double>(f.r_bar) / m;
    beta[r] = static_cast<double>(f.l_bar) / m;
    gamma[r] = alpha[r] - beta[r];
    censored[r] = f.r_censored || f.l_censored;
  });
  EdgeSpeedEstimate est;
  est.m_max = m_max;
  est.replicas = replicas;
  for (char c : censored) est.censored += c;
  const Estimate a = mean_and_error(alpha);
  const Estimate b = mean_and_error(beta);
  const Estimate g = mean_and_error(gamma);
  est.alpha_hat = a.value;
  est.alpha_error = a.std_error;
  est.beta_hat = b.value;
  est.beta_error = b.std_error;
  est.gamma_hat = est.alpha_hat - est.beta_hat;
  est.gamma_error = g.std_error;
  return est;
}

Estimate origin_survival(const Neighborhood& u, double p, long m, std::size_t replicas,
                         std::uint64_t master_seed, const SimOptions& opts) {
  check_probability(p);
  if (m < 1 || replicas < 1) throw PreconditionError("origin_survival needs m, replicas >= 1");
  // Forward cone of the origin is [[-s_u m, -s_1 m]]; pad so it stays exact.
  const long pad = (std::labs(u.min()) + std::labs(u.max())) * m + 1;
  const long lo = -static_cast<long>(u.max()) * m - pad;
  const long hi = -static_cast<long>(u.min()) * m + pad;

  std::vector<unsigned char> alive(replicas, 0);
  parallel_for(replicas, opts.threads, [&](std::size_t r) {
    const NoiseField noise(p, replica_seed(master_seed, r), opts.mode);
    LineConfig c(lo, hi, false, false);
    c.set(0, true);
    LineStepper stepper(c.size(), u);
    std::vector<std::uint64_t> row(c.words().size());
    for (long t = 1; t <= m; ++t) {
      noise.fill_row(t - 1, c.lo(), c.size(), row);
      stepper.advance(c, row);
      if (!c.any_in_window()) return;
    }
    alive[r] = 1;
  });
  std::size_t hits = 0;
  for (auto v : alive) hits += v;
  return proportion(hits, replicas);
}

}  // namespace ppca
