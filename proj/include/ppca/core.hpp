#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ppca/error.hpp"

namespace ppca {

/// Sorted, duplicate-free set of integer offsets s_1 < ... < s_u.
class Neighborhood {
 public:
  /// Throws InvalidNeighborhood on an empty list.
  explicit Neighborhood(std::vector<int> offsets);

  const std::vector<int>& offsets() const { return offsets_; }
  int min() const { return offsets_.front(); }
  int max() const { return offsets_.back(); }
  int span() const { return offsets_.back() - offsets_.front(); }
  std::size_t size() const { return offsets_.size(); }

  bool contains(int s) const;
  bool subset_of(const Neighborhood& other) const;

  /// The neighbourhood {-s : s in U}; maps a process to its mirror image.
  Neighborhood reflected() const;

  /// Comma-separated offsets, e.g. "-1,0,1".
  std::string str(char sep = ',') const;

  friend bool operator==(const Neighborhood&, const Neighborhood&) = default;

 private:
  std::vector<int> offsets_;
};

Neighborhood make_neighborhood(std::vector<int> offsets);

/// Parses "-1,0,2". Throws InvalidNeighborhood on malformed text.
Neighborhood parse_neighborhood(const std::string& text);

/// Neighbours of site x on the ring S_n = [[-n, n-1]]:
/// |x + s_i + n|_{2n} - n for each offset, in offset order.
std::vector<int> periodic_neighbors(int x, int n, const Neighborhood& u);

/// Boolean state of the 2n sites of the ring S_n. Bit b holds site x = b - n.
class RingConfig {
 public:
  explicit RingConfig(int n, bool value = false);

  static RingConfig all_ones(int n) { return RingConfig(n, true); }
  static RingConfig all_zeros(int n) { return RingConfig(n, false); }

  /// Builds a configuration from its little-endian index (site -n is bit 0).
  /// Requires 2n <= 64.
  static RingConfig from_index(int n, std::uint64_t index);
  std::uint64_t to_index() const;

  int half_width() const { return n_; }
  std::size_t size() const { return static_cast<std::size_t>(2 * n_); }

  bool at(int x) const;
  void set(int x, bool v);

  bool is_all_zero() const;
  std::size_t count_ones() const;

  /// Pointwise order: every 1 of *this is a 1 of other.
  bool leq(const RingConfig& other) const;

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  friend bool operator==(const RingConfig&, const RingConfig&) = default;

 private:
  std::size_t bit_of(int x) const;

  int n_;
  std::vector<std::uint64_t> words_;
};

/// A finite window [[lo, hi]] of Z. Sites outside the window are assumed to
/// hold `outside_left` / `outside_right` forever; the sub-range
/// [[valid_lo, valid_hi]] is where the window still agrees with the
/// infinite-lattice evolution. It shrinks as the assumption leaks inward.
class LineConfig {
 public:
  LineConfig(long lo, long hi, bool fill, bool outside_left, bool outside_right);
  LineConfig(long lo, long hi, bool fill, bool outside)
      : LineConfig(lo, hi, fill, outside, outside) {}

  long lo() const { return lo_; }
  long hi() const { return hi_; }
  std::size_t size() const { return static_cast<std::size_t>(hi_ - lo_ + 1); }
  bool outside_left() const { return outside_left_; }
  bool outside_right() const { return outside_right_; }
  long valid_lo() const { return valid_lo_; }
  long valid_hi() const { return valid_hi_; }
  bool is_exact(long x) const { return x >= valid_lo_ && x <= valid_hi_; }

  /// Raw window contents; IndexError outside [[lo, hi]].
  bool at(long x) const;
  void set(long x, bool v);
  void fill(long from, long to, bool v);

  /// Value on the infinite lattice; ConeViolation outside the exact range.
  bool value(long x) const;

  bool any_in_window() const;
  /// Rightmost / leftmost 1 in the window, if any.
  std::optional<long> rightmost_one() const;
  std::optional<long> leftmost_one() const;

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  /// Narrows the exact range after one synchronous step under `u`.
  void shrink_valid(const Neighborhood& u);

  friend bool operator==(const LineConfig&, const LineConfig&) = default;

 private:
  long lo_;
  long hi_;
  bool outside_left_;
  bool outside_right_;
  long valid_lo_;
  long valid_hi_;
  std::vector<std::uint64_t> words_;
};

/// Synchronous update on the ring: x becomes 1 iff its noise bit is 1 and
/// some neighbour was 1. Computed word-wise as (OR of rotated copies) AND noise.
/// Owns scratch space so the hot loop does not allocate.
class RingStepper {
 public:
  RingStepper(int n, Neighborhood u);

  /// `noise` is packed like the configuration (bit b <-> site b - n).
  void advance(RingConfig& config, std::span<const std::uint64_t> noise);

  const Neighborhood& neighborhood() const { return u_; }

 private:
  int n_;
  Neighborhood u_;
  std::vector<std::size_t> rotations_;
  std::vector<std::uint64_t> doubled_;
  std::vector<std::uint64_t> next_;
};

/// Same update on a LineConfig window; outside sites take their boundary value.
class LineStepper {
 public:
  LineStepper(std::size_t window_size, Neighborhood u);

  /// `noise` bit b <-> site lo + b. Throws ConeViolation once the exact range is empty.
  void advance(LineConfig& config, std::span<const std::uint64_t> noise);

  const Neighborhood& neighborhood() const { return u_; }

 private:
  std::size_t size_;
  Neighborhood u_;
  std::size_t halo_;
  std::vector<std::uint64_t> extended_;
  std::vector<std::uint64_t> next_;
};

/// Pure single-step forms.
RingConfig step(const RingConfig& config, std::span<const std::uint64_t> noise,
                const Neighborhood& u);
LineConfig step(const LineConfig& config, std::span<const std::uint64_t> noise,
                const Neighborhood& u);

}  // namespace ppca
