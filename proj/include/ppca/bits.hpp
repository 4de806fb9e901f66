#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

// Packed bit-array helpers shared by the configuration types and kernels.
// Bit i of an array lives in word i / 64 at position i % 64.
namespace ppca::bits {

constexpr std::size_t words_for(std::size_t nbits) { return (nbits + 63) / 64; }

constexpr std::uint64_t low_mask(std::size_t count) {
  return count >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << count) - 1;
}

inline bool get(std::span<const std::uint64_t> w, std::size_t i) {
  return (w[i >> 6] >> (i & 63)) & 1U;
}

inline void set(std::span<std::uint64_t> w, std::size_t i, bool v) {
  const std::uint64_t m = std::uint64_t{1} << (i & 63);
  if (v) {
    w[i >> 6] |= m;
  } else {
    w[i >> 6] &= ~m;
  }
}

/// 64 bits starting at `pos`. The array must hold at least one word past
/// the word containing `pos`.
inline std::uint64_t load64(const std::uint64_t* w, std::size_t pos) {
  const std::size_t q = pos >> 6;
  const std::size_t r = pos & 63;
  if (r == 0) return w[q];
  return (w[q] >> r) | (w[q + 1] << (64 - r));
}

/// Bounds-checked variant of load64; bits past the array read as zero.
inline std::uint64_t load64_checked(std::span<const std::uint64_t> w, std::size_t pos) {
  const std::size_t q = pos >> 6;
  const std::size_t r = pos & 63;
  const std::uint64_t lo = q < w.size() ? w[q] : 0;
  if (r == 0) return lo;
  const std::uint64_t hi = q + 1 < w.size() ? w[q + 1] : 0;
  return (lo >> r) | (hi << (64 - r));
}

/// Writes the low `count` bits of `value` at bit position `pos`.
inline void store(std::span<std::uint64_t> w, std::size_t pos, std::uint64_t value,
                  std::size_t count) {
  if (count == 0) return;
  const std::size_t q = pos >> 6;
  const std::size_t r = pos & 63;
  const std::uint64_t mask = low_mask(count);
  value &= mask;
  w[q] = (w[q] & ~(mask << r)) | (value << r);
  if (r != 0 && r + count > 64) {
    w[q + 1] = (w[q + 1] & ~(mask >> (64 - r))) | (value >> (64 - r));
  }
}

/// Copies `len` bits from `src` (starting at bit `src_pos`) into `dst` at `dst_pos`.
inline void copy(std::span<std::uint64_t> dst, std::size_t dst_pos,
                 std::span<const std::uint64_t> src, std::size_t src_pos, std::size_t len) {
  for (std::size_t k = 0; k < len; k += 64) {
    const std::size_t chunk = len - k < 64 ? len - k : 64;
    store(dst, dst_pos + k, load64_checked(src, src_pos + k), chunk);
  }
}

inline void fill(std::span<std::uint64_t> dst, std::size_t pos, std::size_t len, bool value) {
  const std::uint64_t v = value ? ~std::uint64_t{0} : 0;
  for (std::size_t k = 0; k < len; k += 64) {
    const std::size_t chunk = len - k < 64 ? len - k : 64;
    store(dst, pos + k, v, chunk);
  }
}

}  // namespace ppca::bits
