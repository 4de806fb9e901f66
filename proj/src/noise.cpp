#include "ppca/noise.hpp"

#include <cmath>

#include "ppca/bits.hpp"
#include "ppca/error.hpp"

namespace ppca {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kTimeKey = 0xD1B54A32D192ED03ULL;
constexpr std::uint64_t kBlockKey = 0x8CB92BA72F3D8DD7ULL;

long floor_div64(long x) { return x >= 0 ? x / 64 : -((-x + 63) / 64); }

}  // namespace

NoiseField::NoiseField(double p, std::uint64_t seed, NoiseMode mode)
    : p_(p), seed_(seed), mode_(mode) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("noise probability must lie in [0, 1]");
  if (p >= 1.0) {
    always_open_ = true;
  } else if (p <= 0.0) {
    never_open_ = true;
  } else {
    threshold_ = static_cast<std::uint64_t>(std::ldexp(p, 64));
    if (threshold_ == 0) never_open_ = true;
  }
}

std::uint64_t NoiseField::block_key(long t, long w) const {
  const std::uint64_t k = mix64(seed_ ^ (static_cast<std::uint64_t>(t) * kTimeKey));
  return mix64(k ^ (static_cast<std::uint64_t>(w) * kBlockKey));
}

std::uint64_t NoiseField::digit_word(std::uint64_t key, unsigned digit) const {
  return mix64(key + digit * kGolden);
}

std::uint64_t NoiseField::block(long t, long w) const {
  if (always_open_) return ~std::uint64_t{0};
  if (never_open_) return 0;
  const std::uint64_t key = block_key(t, w);
  std::uint64_t undecided = ~std::uint64_t{0};
  std::uint64_t result = 0;
  for (unsigned digit = 1; digit <= 64 && undecided != 0; ++digit) {
    const std::uint64_t r = digit_word(key, digit);
    const std::uint64_t pmask = ((threshold_ >> (64 - digit)) & 1U) ? ~std::uint64_t{0} : 0;
    // U has digit 0 where p has digit 1: U < p, decided open.
    result |= undecided & ~r & pmask;
    undecided &= ~(r ^ pmask);
  }
  return result;
}

bool NoiseField::open(long x, long t) const {
  if (always_open_) return true;
  if (never_open_) return false;
  const long w = floor_div64(x);
  const unsigned pos = static_cast<unsigned>(x - 64 * w);
  const std::uint64_t key = block_key(t, w);
  for (unsigned digit = 1; digit <= 64; ++digit) {
    const unsigned u = static_cast<unsigned>((digit_word(key, digit) >> pos) & 1U);
    const unsigned q = static_cast<unsigned>((threshold_ >> (64 - digit)) & 1U);
    if (u != q) return u < q;
  }
  return false;
}

void NoiseField::fill_row(long t, long lo, std::size_t count, std::span<std::uint64_t> out) const {
  const std::size_t nw = bits::words_for(count);
  if (out.size() < nw) throw IndexError("noise output buffer too small");
  if (count == 0) return;
  if (mode_ == NoiseMode::per_site) {
    for (std::size_t i = 0; i < nw; ++i) out[i] = 0;
    for (std::size_t b = 0; b < count; ++b) {
      if (open(lo + static_cast<long>(b), t)) bits::set(out, b, true);
    }
    return;
  }
  const long first = floor_div64(lo);
  const unsigned shift = static_cast<unsigned>(lo - 64 * first);
  std::uint64_t current = block(t, first);
  for (std::size_t i = 0; i < nw; ++i) {
    const long w = first + static_cast<long>(i);
    if (shift == 0) {
      out[i] = current;
      current = (i + 1 < nw) ? block(t, w + 1) : 0;
    } else {
      const std::uint64_t next = block(t, w + 1);
      out[i] = (current >> shift) | (next << (64 - shift));
      current = next;
    }
  }
  out[nw - 1] &= bits::low_mask(count - 64 * (nw - 1));
}

std::vector<std::uint64_t> NoiseField::row(long t, long lo, std::size_t count) const {
  std::vector<std::uint64_t> out(bits::words_for(count), 0);
  fill_row(t, lo, count, out);
  return out;
}

}  // namespace ppca
