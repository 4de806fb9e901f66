#include <doctest.h>

#include <cmath>

#include "ppca/error.hpp"
#include "ppca/noise.hpp"

using namespace ppca;

TEST_CASE("noise field is a pure function of (seed, p, x, t)") {
  const NoiseField a(0.37, 99);
  const NoiseField b(0.37, 99);
  for (long t = 0; t < 5; ++t) {
    for (long x = -300; x < 300; ++x) CHECK(a.open(x, t) == b.open(x, t));
  }
  // Any sub-box regenerates the same bits.
  const auto wide = a.row(3, -200, 400);
  const auto narrow = a.row(3, -77, 151);
  for (long b2 = 0; b2 < 151; ++b2) {
    const long x = -77 + b2;
    const long i = x + 200;
    CHECK(((narrow[b2 / 64] >> (b2 % 64)) & 1U) == ((wide[i / 64] >> (i % 64)) & 1U));
  }
}

TEST_CASE("word-sliced rows match per-site generation") {
  for (double p : {0.0, 0.013, 0.5, 0.71, 0.999, 1.0}) {
    const NoiseField fast(p, 1234, NoiseMode::word_sliced);
    const NoiseField slow(p, 1234, NoiseMode::per_site);
    for (long lo : {-130L, -64L, -1L, 0L, 5L, 64L}) {
      for (std::size_t count : {1UL, 63UL, 64UL, 65UL, 200UL}) {
        CHECK(fast.row(7, lo, count) == slow.row(7, lo, count));
      }
    }
  }
}

TEST_CASE("row tail bits are cleared") {
  const NoiseField f(1.0, 1);
  const auto r = f.row(0, -3, 70);
  CHECK(r.size() == 2);
  CHECK(r[1] == 0x3FULL);
}

TEST_CASE("open frequency matches p") {
  for (double p : {0.1, 0.5, 0.705, 0.9}) {
    const NoiseField f(p, 4242);
    const long sites = 200000;
    long hits = 0;
    for (long x = 0; x < sites; ++x) hits += f.open(x, x % 13) ? 1 : 0;
    const double phat = static_cast<double>(hits) / static_cast<double>(sites);
    const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(sites));
    CHECK(std::fabs(phat - p) < 4.0 * sigma);
  }
}

TEST_CASE("fields with one seed are monotone in p") {
  const NoiseField lo(0.42, 77);
  const NoiseField hi(0.58, 77);
  for (long t = 0; t < 20; ++t) {
    const auto a = lo.row(t, -500, 1000);
    const auto b = hi.row(t, -500, 1000);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK((a[i] & ~b[i]) == 0);
  }
}

TEST_CASE("distinct times and seeds decorrelate") {
  const NoiseField f(0.5, 3);
  const NoiseField g(0.5, 4);
  long same_t = 0;
  long same_seed = 0;
  const long sites = 20000;
  for (long x = 0; x < sites; ++x) {
    same_t += f.open(x, 0) == f.open(x, 1) ? 1 : 0;
    same_seed += f.open(x, 0) == g.open(x, 0) ? 1 : 0;
  }
  const double sigma = std::sqrt(0.25 / static_cast<double>(sites));
  CHECK(std::fabs(static_cast<double>(same_t) / sites - 0.5) < 4.0 * sigma);
  CHECK(std::fabs(static_cast<double>(same_seed) / sites - 0.5) < 4.0 * sigma);
}

TEST_CASE("invalid probability") {
  CHECK_THROWS_AS(NoiseField(-0.1, 1), DomainError);
  CHECK_THROWS_AS(NoiseField(1.5, 1), DomainError);
}
