#include <doctest.h>

#include <cmath>
#include <set>

#include "sarcint/rng.hpp"

using namespace sarcint;

// Published known-answer vectors for the 10-round Philox4x32 block cipher.
TEST_CASE("philox4x32-10 known answers") {
  {
    const auto out = rng::philox4x32_10({0u, 0u, 0u, 0u}, {0u, 0u});
    CHECK(out[0] == 0x6627e8d5u);
    CHECK(out[1] == 0xe169c58du);
    CHECK(out[2] == 0xbc57ac4cu);
    CHECK(out[3] == 0x9b00dbd8u);
  }
  {
    const auto out = rng::philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                        {0xffffffffu, 0xffffffffu});
    CHECK(out[0] == 0x408f276du);
    CHECK(out[1] == 0x41c83b0eu);
    CHECK(out[2] == 0xa20bc7c6u);
    CHECK(out[3] == 0x6d5451fdu);
  }
  {
    const auto out = rng::philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                        {0xa4093822u, 0x299f31d0u});
    CHECK(out[0] == 0xd16cfe09u);
    CHECK(out[1] == 0x94fdccebu);
    CHECK(out[2] == 0x5001e420u);
    CHECK(out[3] == 0x24126ea1u);
  }
}

TEST_CASE("streams and indices decorrelate and replay exactly") {
  const rng::StreamKey key{7, rng::kStreamMedium, 3};

  SUBCASE("same key, same index: identical words") {
    CHECK(rng::random_words(key, 11) == rng::random_words(key, 11));
    const auto [a1, b1] = rng::uniform_pair(key, 5);
    const auto [a2, b2] = rng::uniform_pair(key, 5);
    CHECK(a1 == a2);
    CHECK(b1 == b2);
  }

  SUBCASE("any field change changes the output") {
    const auto base = rng::random_words(key, 11);
    CHECK(rng::random_words({8, key.stream, key.realization}, 11) != base);
    CHECK(rng::random_words({key.seed, rng::kStreamNoise, key.realization}, 11) != base);
    CHECK(rng::random_words({key.seed, key.stream, 4}, 11) != base);
    CHECK(rng::random_words(key, 12) != base);
  }

  SUBCASE("no collisions across a block of indices") {
    std::set<std::array<std::uint32_t, 4>> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(rng::random_words(key, i));
    CHECK(seen.size() == 1000);
  }
}

TEST_CASE("uniform pairs live in [0,1) and fill it evenly") {
  const rng::StreamKey key{123, 1, 0};
  const int n = 20000;
  double sum = 0.0, sum_sq = 0.0;
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto [u, v] = rng::uniform_pair(key, i);
    for (double x : {u, v}) {
      CHECK(x >= 0.0);
      CHECK(x < 1.0);
      sum += x;
      sum_sq += x * x;
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  }
  const double mean = sum / (2 * n);
  const double var = sum_sq / (2 * n) - mean * mean;
  // 1/sqrt(12 * 40000) ~ 0.0014 standard error on the mean; allow 4 sigma.
  CHECK(mean == doctest::Approx(0.5).epsilon(0.012));
  CHECK(var == doctest::Approx(1.0 / 12.0).epsilon(0.03));
  CHECK(lo < 0.001);
  CHECK(hi > 0.999);
}

TEST_CASE("normal pairs have standard moments") {
  const rng::StreamKey key{99, 2, 1};
  const int n = 50000;
  double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto [g, h] = rng::normal_pair(key, i);
    for (double x : {g, h}) {
      s1 += x;
      s2 += x * x;
      s3 += x * x * x;
      s4 += x * x * x * x;
    }
  }
  const double m = 2.0 * n;
  CHECK(std::abs(s1 / m) < 0.02);                       // SE ~ 0.0032
  CHECK(s2 / m == doctest::Approx(1.0).epsilon(0.02));  // SE ~ 0.0045
  CHECK(std::abs(s3 / m) < 0.06);                       // SE ~ 0.0078
  CHECK(s4 / m == doctest::Approx(3.0).epsilon(0.05));  // SE ~ 0.031
}
