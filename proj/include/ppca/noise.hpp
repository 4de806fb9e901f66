#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ppca {

/// SplitMix64 output function: a bijective 64-bit avalanche mix.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed of replica `index` derived from `master_seed`:
///   mix64(master_seed + (index + 1) * 0x9E3779B97F4A7C15)
/// i.e. the index-th SplitMix64 output started at master_seed. The map is
/// injective in `index` for a fixed master seed.
constexpr std::uint64_t replica_seed(std::uint64_t master_seed, std::uint64_t index) {
  return mix64(master_seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

enum class NoiseMode {
  /// 64 sites per hash-word, compared against p bit-plane by bit-plane.
  word_sliced,
  /// One site at a time; slower reference that yields the identical field.
  per_site,
};

/// Bernoulli(p) space-time field omega_{x,t}, a pure function of
/// (seed, p, x, t).
///
/// Every vertex carries a 64-bit uniform U_{x,t} whose binary digits are bit
/// (x mod 64) of the counter-based words r_1, r_2, ... keyed on
/// (seed, t, floor(x / 64), digit). The vertex is open iff
/// U_{x,t} < floor(p * 2^64). Since U does not depend on p, fields with the
/// same seed are coupled: raising p only opens vertices.
class NoiseField {
 public:
  NoiseField(double p, std::uint64_t seed, NoiseMode mode = NoiseMode::word_sliced);

  double p() const { return p_; }
  std::uint64_t seed() const { return seed_; }
  NoiseMode mode() const { return mode_; }

  bool open(long x, long t) const;

  /// Packs omega_{lo + b, t} into bit b of `out` for b < count; the tail of
  /// the last word is cleared.
  void fill_row(long t, long lo, std::size_t count, std::span<std::uint64_t> out) const;

  std::vector<std::uint64_t> row(long t, long lo, std::size_t count) const;

  /// Word-sliced comparison for the aligned block of sites [64 w, 64 w + 63].
  std::uint64_t block(long t, long w) const;

 private:
  std::uint64_t digit_word(std::uint64_t key, unsigned digit) const;
  std::uint64_t block_key(long t, long w) const;

  double p_;
  std::uint64_t seed_;
  NoiseMode mode_;
  std::uint64_t threshold_ = 0;
  bool always_open_ = false;
  bool never_open_ = false;
};

}  // namespace ppca
