#include <doctest.h>

#include <random>
#include <unordered_set>

#include "helpers.hpp"
#include "ppca/core.hpp"
#include "ppca/noise.hpp"

using namespace ppca;

TEST_CASE("make_neighborhood sorts, dedups and reports span") {
  const auto a = make_neighborhood({-1, 0, 1});
  CHECK(a.offsets() == std::vector<int>{-1, 0, 1});
  CHECK(a.span() == 2);
  const auto b = make_neighborhood({2, -1, 0});
  CHECK(b.offsets() == std::vector<int>{-1, 0, 2});
  CHECK(b.span() == 3);
  const auto c = make_neighborhood({0});
  CHECK(c.span() == 0);
  CHECK(make_neighborhood({1, 1, 0}).size() == 2);
  CHECK_THROWS_AS(make_neighborhood({}), InvalidNeighborhood);
}

TEST_CASE("parse_neighborhood") {
  CHECK(parse_neighborhood("-1,0,2").offsets() == std::vector<int>{-1, 0, 2});
  CHECK(parse_neighborhood(" 3 , -2 ").offsets() == std::vector<int>{-2, 3});
  CHECK_THROWS_AS(parse_neighborhood(""), InvalidNeighborhood);
  CHECK_THROWS_AS(parse_neighborhood("1,,2"), InvalidNeighborhood);
  CHECK_THROWS_AS(parse_neighborhood("a,1"), InvalidNeighborhood);
  CHECK_THROWS_AS(parse_neighborhood("1.5"), InvalidNeighborhood);
}

TEST_CASE("subset and reflection") {
  const Neighborhood a({0, 1});
  const Neighborhood b({-1, 0, 1});
  CHECK(a.subset_of(b));
  CHECK_FALSE(b.subset_of(a));
  CHECK(a.reflected().offsets() == std::vector<int>{-1, 0});
}

TEST_CASE("periodic_neighbors") {
  for (int n : {1, 2, 5, 17}) {
    CHECK(periodic_neighbors(n - 1, n, Neighborhood({0, 1})) == std::vector<int>{n - 1, -n});
  }
  CHECK(periodic_neighbors(0, 4, Neighborhood({-1, 0, 1})) == std::vector<int>{-1, 0, 1});
  // x = -3 on S_3: |-3 - 1 + 3|_6 - 3 = 5 - 3 = 2 and |-3 + 0 + 3|_6 - 3 = -3.
  CHECK(periodic_neighbors(-3, 3, Neighborhood({-1, 0})) == std::vector<int>{2, -3});
  CHECK_THROWS_AS(periodic_neighbors(3, 3, Neighborhood({0})), IndexError);
  CHECK_THROWS_AS(periodic_neighbors(-4, 3, Neighborhood({0})), IndexError);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 20);
    const int x = static_cast<int>(rng() % (2 * n)) - n;
    const Neighborhood u({static_cast<int>(rng() % 41) - 20, static_cast<int>(rng() % 41) - 20});
    for (int k : periodic_neighbors(x, n, u)) {
      CHECK(k >= -n);
      CHECK(k <= n - 1);
    }
  }
}

TEST_CASE("ring configuration indexing") {
  RingConfig c(3);
  c.set(-3, true);
  c.set(2, true);
  CHECK(c.to_index() == ((1U << 0) | (1U << 5)));
  CHECK(RingConfig::from_index(3, c.to_index()) == c);
  CHECK(c.count_ones() == 2);
  CHECK_THROWS_AS(c.at(3), IndexError);
  CHECK(RingConfig::all_ones(40).count_ones() == 80);
}

TEST_CASE("ring step examples") {
  const Neighborhood u({0, 1});
  // Sites (-1, 0) = (1, 0), noise (1, 1): both sites see the 1.
  RingConfig c(1);
  c.set(-1, true);
  const std::uint64_t all = 0b11;
  const auto next = step(c, std::span<const std::uint64_t>(&all, 1), u);
  CHECK(next.at(-1));
  CHECK(next.at(0));

  for (int n : {1, 7, 32, 33, 100}) {
    const auto ones = RingConfig::all_ones(n);
    std::vector<std::uint64_t> full((2 * n + 63) / 64, ~std::uint64_t{0});
    CHECK(step(ones, full, u) == ones);
    const auto zeros = RingConfig::all_zeros(n);
    CHECK(step(zeros, full, Neighborhood({-3, 0, 5})) == zeros);
  }
}

TEST_CASE("word kernel matches the scalar update") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 90);
    std::vector<int> offs;
    const int k = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < k; ++i) offs.push_back(static_cast<int>(rng() % 11) - 5);
    const Neighborhood u(offs);
    auto c = testing::random_ring(rng, n, 0.5);
    RingStepper stepper(n, u);
    for (int t = 0; t < 4; ++t) {
      const auto open = testing::random_bits(rng, 2 * n, 0.7);
      const auto expected = testing::scalar_step(c, open, u);
      stepper.advance(c, testing::pack(open));
      REQUIRE(c == expected);
    }
  }
}

TEST_CASE("line stepper agrees with the ring away from the edges") {
  std::mt19937_64 rng(12);
  const Neighborhood u({-1, 0, 2});
  const int n = 50;
  const long T = 10;
  auto ring = testing::random_ring(rng, n, 0.6);
  LineConfig line(-n, n - 1, false, false);
  for (int x = -n; x < n; ++x) line.set(x, ring.at(x));
  RingStepper rs(n, u);
  LineStepper ls(line.size(), u);
  for (long t = 1; t <= T; ++t) {
    const auto open = testing::random_bits(rng, 2 * n, 0.8);
    rs.advance(ring, testing::pack(open));
    ls.advance(line, testing::pack(open));
  }
  CHECK(line.valid_lo() == -n + T);
  CHECK(line.valid_hi() == n - 1 - 2 * T);
  for (long x = line.valid_lo(); x <= line.valid_hi(); ++x) CHECK(line.value(x) == ring.at(x));
  CHECK_THROWS_AS(line.value(line.valid_lo() - 1), ConeViolation);
}

TEST_CASE("line window that is too narrow raises a cone violation") {
  LineConfig c(0, 4, true, false);
  LineStepper s(c.size(), Neighborhood({-1, 0, 1}));
  const std::uint64_t all = ~std::uint64_t{0};
  s.advance(c, std::span<const std::uint64_t>(&all, 1));
  s.advance(c, std::span<const std::uint64_t>(&all, 1));
  CHECK(c.valid_lo() == 2);
  CHECK(c.valid_hi() == 2);
  CHECK_THROWS_AS(s.advance(c, std::span<const std::uint64_t>(&all, 1)), ConeViolation);
}

TEST_CASE("outside values feed the window edges") {
  LineConfig c(0, 9, false, true, false);
  LineStepper s(c.size(), Neighborhood({-1, 0}));
  const std::uint64_t all = ~std::uint64_t{0};
  s.advance(c, std::span<const std::uint64_t>(&all, 1));
  CHECK(c.at(0));
  CHECK_FALSE(c.at(1));
  CHECK(c.valid_lo() == 1);
  CHECK(c.rightmost_one() == 0);
}

TEST_CASE("monotone coupling in the initial configuration") {
  std::mt19937_64 rng(21);
  const Neighborhood u({-1, 0, 1});
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 70);
    const auto hi = testing::random_ring(rng, n, 0.6);
    RingConfig lo(n);
    for (int x = -n; x < n; ++x) lo.set(x, hi.at(x) && (rng() & 1U));
    REQUIRE(lo.leq(hi));
    const auto noise = testing::pack(testing::random_bits(rng, 2 * n, 0.5));
    CHECK(step(lo, noise, u).leq(step(hi, noise, u)));
  }
}

TEST_CASE("neighbourhood coupling by induction") {
  std::mt19937_64 rng(22);
  const Neighborhood small({0, 1});
  const Neighborhood large({-2, 0, 1, 3});
  for (int run = 0; run < 10000; ++run) {
    const int n = 1 + static_cast<int>(rng() % 12);
    auto a = testing::random_ring(rng, n, 0.5);
    auto b = a;
    RingStepper sa(n, small);
    RingStepper sb(n, large);
    for (int t = 0; t < 6; ++t) {
      const auto noise = testing::pack(testing::random_bits(rng, 2 * n, 0.6));
      sa.advance(a, noise);
      sb.advance(b, noise);
      REQUIRE(a.leq(b));
    }
  }
}

TEST_CASE("all zeros is absorbing") {
  std::mt19937_64 rng(23);
  for (int n : {1, 3, 31, 64, 65}) {
    RingConfig c(n);
    RingStepper s(n, Neighborhood({-4, 1, 2}));
    for (int t = 0; t < 10; ++t) {
      s.advance(c, testing::pack(testing::random_bits(rng, 2 * n, 0.9)));
      CHECK(c.is_all_zero());
    }
  }
}

TEST_CASE("replica seeds") {
  const std::uint64_t master = 0xDEADBEEF;
  CHECK(replica_seed(master, 0) != replica_seed(master, 1));
  CHECK(replica_seed(master, 5) == replica_seed(master, 5));
  // Independent restatement of the documented formula.
  std::uint64_t z = master + 3 * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  CHECK(replica_seed(master, 2) == z);

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(2000000);
  for (std::uint64_t i = 0; i < 1000000; ++i) seen.insert(replica_seed(master, i));
  CHECK(seen.size() == 1000000);
}
