#include "ppca/core.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdlib>
#include <sstream>

#include "ppca/bits.hpp"

namespace ppca {

Neighborhood::Neighborhood(std::vector<int> offsets) : offsets_(std::move(offsets)) {
  if (offsets_.empty()) throw InvalidNeighborhood("neighbourhood must contain at least one offset");
  std::sort(offsets_.begin(), offsets_.end());
  offsets_.erase(std::unique(offsets_.begin(), offsets_.end()), offsets_.end());
}

bool Neighborhood::contains(int s) const {
  return std::binary_search(offsets_.begin(), offsets_.end(), s);
}

bool Neighborhood::subset_of(const Neighborhood& other) const {
  return std::includes(other.offsets_.begin(), other.offsets_.end(), offsets_.begin(),
                       offsets_.end());
}

Neighborhood Neighborhood::reflected() const {
  std::vector<int> r;
  r.reserve(offsets_.size());
  for (int s : offsets_) r.push_back(-s);
  return Neighborhood(std::move(r));
}

std::string Neighborhood::str(char sep) const {
  std::string out;
  for (std::size_t i = 0; i < offsets_.size(); ++i) {
    if (i != 0) out += sep;
    out += std::to_string(offsets_[i]);
  }
  return out;
}

Neighborhood make_neighborhood(std::vector<int> offsets) { return Neighborhood(std::move(offsets)); }

Neighborhood parse_neighborhood(const std::string& text) {
  std::vector<int> offsets;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    std::size_t a = start;
    std::size_t b = end;
    while (a < b && (text[a] == ' ' || text[a] == '\t')) ++a;
    while (b > a && (text[b - 1] == ' ' || text[b - 1] == '\t')) --b;
    if (a == b) throw InvalidNeighborhood("empty offset in neighbourhood '" + text + "'");
    const char* first = text.data() + a;
    const char* last = text.data() + b;
    if (*first == '+') ++first;
    int value = 0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
      throw InvalidNeighborhood("malformed offset '" + text.substr(a, b - a) + "'");
    }
    offsets.push_back(value);
    start = end + 1;
  }
  return Neighborhood(std::move(offsets));
}

std::vector<int> periodic_neighbors(int x, int n, const Neighborhood& u) {
  if (n < 1) throw IndexError("ring half-width must be positive");
  if (x < -n || x > n - 1) {
    throw IndexError("site " + std::to_string(x) + " outside [[-" + std::to_string(n) + ", " +
                     std::to_string(n - 1) + "]]");
  }
  const long period = 2L * n;
  std::vector<int> out;
  out.reserve(u.size());
  for (int s : u.offsets()) {
    long v = (static_cast<long>(x) + s + n) % period;
    if (v < 0) v += period;
    out.push_back(static_cast<int>(v - n));
  }
  return out;
}

// ---------------------------------------------------------------- RingConfig

RingConfig::RingConfig(int n, bool value) : n_(n) {
  if (n < 1) throw IndexError("ring half-width must be positive");
  words_.assign(bits::words_for(size()), 0);
  if (value) bits::fill(words_, 0, size(), true);
}

RingConfig RingConfig::from_index(int n, std::uint64_t index) {
  RingConfig c(n);
  if (c.size() > 64) throw IndexError("configuration index needs 2n <= 64");
  c.words_[0] = index & bits::low_mask(c.size());
  return c;
}

std::uint64_t RingConfig::to_index() const {
  if (size() > 64) throw IndexError("configuration index needs 2n <= 64");
  return words_[0];
}

std::size_t RingConfig::bit_of(int x) const {
  if (x < -n_ || x > n_ - 1) {
    throw IndexError("site " + std::to_string(x) + " outside ring of half-width " +
                     std::to_string(n_));
  }
  return static_cast<std::size_t>(x + n_);
}

bool RingConfig::at(int x) const { return bits::get(words_, bit_of(x)); }

void RingConfig::set(int x, bool v) { bits::set(words_, bit_of(x), v); }

bool RingConfig::is_all_zero() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t RingConfig::count_ones() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool RingConfig::leq(const RingConfig& other) const {
  if (other.n_ != n_) throw IndexError("ring sizes differ");
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------- LineConfig

LineConfig::LineConfig(long lo, long hi, bool fill, bool outside_left, bool outside_right)
    : lo_(lo),
      hi_(hi),
      outside_left_(outside_left),
      outside_right_(outside_right),
      valid_lo_(lo),
      valid_hi_(hi) {
  if (hi < lo) throw IndexError("line window needs lo <= hi");
  words_.assign(bits::words_for(size()), 0);
  if (fill) bits::fill(words_, 0, size(), true);
}

bool LineConfig::at(long x) const {
  if (x < lo_ || x > hi_) throw IndexError("site " + std::to_string(x) + " outside window");
  return bits::get(words_, static_cast<std::size_t>(x - lo_));
}

void LineConfig::set(long x, bool v) {
  if (x < lo_ || x > hi_) throw IndexError("site " + std::to_string(x) + " outside window");
  bits::set(words_, static_cast<std::size_t>(x - lo_), v);
}

void LineConfig::fill(long from, long to, bool v) {
  if (to < from) return;
  if (from < lo_ || to > hi_) throw IndexError("fill range outside window");
  bits::fill(words_, static_cast<std::size_t>(from - lo_), static_cast<std::size_t>(to - from + 1), v);
}

bool LineConfig::value(long x) const {
  if (!is_exact(x)) {
    throw ConeViolation("site " + std::to_string(x) + " outside exact range [[" +
                        std::to_string(valid_lo_) + ", " + std::to_string(valid_hi_) + "]]");
  }
  return bits::get(words_, static_cast<std::size_t>(x - lo_));
}

bool LineConfig::any_in_window() const {
  return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

std::optional<long> LineConfig::rightmost_one() const {
  for (std::size_t i = words_.size(); i-- > 0;) {
    if (words_[i] != 0) {
      const int top = 63 - std::countl_zero(words_[i]);
      return lo_ + static_cast<long>(i * 64 + static_cast<std::size_t>(top));
    }
  }
  return std::nullopt;
}

std::optional<long> LineConfig::leftmost_one() const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] != 0) {
      return lo_ + static_cast<long>(i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i])));
    }
  }
  return std::nullopt;
}

void LineConfig::shrink_valid(const Neighborhood& u) {
  const long new_lo = std::max(lo_, valid_lo_ - u.min());
  const long new_hi = std::min(hi_, valid_hi_ - u.max());
  if (new_lo > new_hi) {
    throw ConeViolation("window [[" + std::to_string(lo_) + ", " + std::to_string(hi_) +
                        "]] too narrow: no exact site left after this step");
  }
  valid_lo_ = new_lo;
  valid_hi_ = new_hi;
}

// ---------------------------------------------------------------- kernels

RingStepper::RingStepper(int n, Neighborhood u) : n_(n), u_(std::move(u)) {
  if (n < 1) throw IndexError("ring half-width must be positive");
  const long period = 2L * n;
  for (int s : u_.offsets()) {
    long r = s % period;
    if (r < 0) r += period;
    rotations_.push_back(static_cast<std::size_t>(r));
  }
  std::sort(rotations_.begin(), rotations_.end());
  rotations_.erase(std::unique(rotations_.begin(), rotations_.end()), rotations_.end());
  const std::size_t w = bits::words_for(static_cast<std::size_t>(period));
  doubled_.assign(2 * w + 2, 0);
  next_.assign(w, 0);
}

void RingStepper::advance(RingConfig& config, std::span<const std::uint64_t> noise) {
  const std::size_t nbits = config.size();
  if (config.half_width() != n_) throw IndexError("ring size does not match stepper");
  auto words = config.words();
  const std::size_t w = words.size();
  if (noise.size() < w) throw IndexError("noise row shorter than ring");

  // doubled_ = config ++ config, so a rotation by r is a plain unaligned read.
  std::copy(words.begin(), words.end(), doubled_.begin());
  bits::copy(doubled_, nbits, words, 0, nbits);

  const std::uint64_t* d = doubled_.data();
  for (std::size_t i = 0; i < w; ++i) {
    std::uint64_t acc = 0;
    for (std::size_t r : rotations_) acc |= bits::load64(d, i * 64 + r);
    next_[i] = acc & noise[i];
  }
  next_[w - 1] &= bits::low_mask(nbits - 64 * (w - 1));
  std::copy(next_.begin(), next_.end(), words.begin());
}

LineStepper::LineStepper(std::size_t window_size, Neighborhood u)
    : size_(window_size), u_(std::move(u)) {
  halo_ = static_cast<std::size_t>(std::max(std::abs(u_.min()), std::abs(u_.max())));
  const std::size_t w = bits::words_for(size_);
  extended_.assign(bits::words_for(size_ + 2 * halo_) + 2, 0);
  next_.assign(w, 0);
}

void LineStepper::advance(LineConfig& config, std::span<const std::uint64_t> noise) {
  if (config.size() != size_) throw IndexError("window size does not match stepper");
  auto words = config.words();
  const std::size_t w = words.size();
  if (noise.size() < w) throw IndexError("noise row shorter than window");
  config.shrink_valid(u_);

  const std::size_t total = extended_.size() * 64;
  bits::fill(extended_, 0, halo_, config.outside_left());
  bits::copy(extended_, halo_, words, 0, size_);
  bits::fill(extended_, halo_ + size_, total - halo_ - size_, config.outside_right());

  const std::uint64_t* e = extended_.data();
  for (std::size_t i = 0; i < w; ++i) {
    std::uint64_t acc = 0;
    for (int s : u_.offsets()) {
      acc |= bits::load64(e, i * 64 + static_cast<std::size_t>(static_cast<long>(halo_) + s));
    }
    next_[i] = acc & noise[i];
  }
  next_[w - 1] &= bits::low_mask(size_ - 64 * (w - 1));
  std::copy(next_.begin(), next_.end(), words.begin());
}

RingConfig step(const RingConfig& config, std::span<const std::uint64_t> noise,
                const Neighborhood& u) {
  RingConfig next = config;
  RingStepper(config.half_width(), u).advance(next, noise);
  return next;
}

LineConfig step(const LineConfig& config, std::span<const std::uint64_t> noise,
                const Neighborhood& u) {
  LineConfig next = config;
  LineStepper(config.size(), u).advance(next, noise);
  return next;
}

}  // namespace ppca
