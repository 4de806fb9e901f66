#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ppca/core.hpp"

namespace testing {

// Scalar reference update on the ring, written from the definition.
inline ppca::RingConfig scalar_step(const ppca::RingConfig& c, const std::vector<bool>& open,
                                    const ppca::Neighborhood& u) {
  const int n = c.half_width();
  ppca::RingConfig next(n);
  for (int x = -n; x < n; ++x) {
    bool any = false;
    for (int s : u.offsets()) {
      const int k = ((x + s + n) % (2 * n) + 2 * n) % (2 * n) - n;
      any = any || c.at(k);
    }
    next.set(x, open[x + n] && any);
  }
  return next;
}

inline std::vector<std::uint64_t> pack(const std::vector<bool>& bits) {
  std::vector<std::uint64_t> w((bits.size() + 63) / 64, 0);
  for (std::size_t b = 0; b < bits.size(); ++b) {
    if (bits[b]) w[b / 64] |= std::uint64_t{1} << (b % 64);
  }
  return w;
}

inline std::vector<bool> random_bits(std::mt19937_64& rng, std::size_t count, double p) {
  std::bernoulli_distribution d(p);
  std::vector<bool> v(count);
  for (std::size_t i = 0; i < count; ++i) v[i] = d(rng);
  return v;
}

inline ppca::RingConfig random_ring(std::mt19937_64& rng, int n, double p) {
  const auto bits = random_bits(rng, static_cast<std::size_t>(2 * n), p);
  ppca::RingConfig c(n);
  for (int x = -n; x < n; ++x) c.set(x, bits[x + n]);
  return c;
}

}  // namespace testing
