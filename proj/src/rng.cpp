#include "sarcint/rng.hpp"

#include <cmath>
#include <numbers>

namespace sarcint::rng {
namespace {

constexpr std::uint32_t kPhiloxW32A = 0x9E3779B9;  // golden ratio
constexpr std::uint32_t kPhiloxW32B = 0xBB67AE85;  // sqrt(3) - 1
constexpr std::uint32_t kPhiloxM4x32A = 0xD2511F53;
constexpr std::uint32_t kPhiloxM4x32B = 0xCD9E8D57;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

// splitmix64 finalizer; used to spread seed/stream bits over the Philox key.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(const std::array<std::uint32_t, 4>& counter,
                                           const std::array<std::uint32_t, 2>& key) {
  std::array<std::uint32_t, 4> c = counter;
  std::array<std::uint32_t, 2> k = key;
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM4x32A, c[0], hi0, lo0);
    mulhilo(kPhiloxM4x32B, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += kPhiloxW32A;
    k[1] += kPhiloxW32B;
  }
  return c;
}

std::array<std::uint32_t, 4> random_words(const StreamKey& key, std::uint64_t index) {
  const std::uint64_t k64 = mix64(mix64(key.seed) ^ key.stream);
  const std::array<std::uint32_t, 2> k = {static_cast<std::uint32_t>(k64),
                                          static_cast<std::uint32_t>(k64 >> 32)};
  const std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
      static_cast<std::uint32_t>(key.realization),
      static_cast<std::uint32_t>(key.realization >> 32)};
  return philox4x32_10(ctr, k);
}

std::pair<double, double> uniform_pair(const StreamKey& key, std::uint64_t index) {
  const auto w = random_words(key, index);
  const std::uint64_t u0 = (static_cast<std::uint64_t>(w[1]) << 32) | w[0];
  const std::uint64_t u1 = (static_cast<std::uint64_t>(w[3]) << 32) | w[2];
  constexpr double scale = 1.0 / 9007199254740992.0;  // 2^-53
  return {static_cast<double>(u0 >> 11) * scale, static_cast<double>(u1 >> 11) * scale};
}

std::pair<double, double> normal_pair(const StreamKey& key, std::uint64_t index) {
  auto [u0, u1] = uniform_pair(key, index);
  // Shift u0 into (0,1] so the log is finite.
  const double r = std::sqrt(-2.0 * std::log1p(u0 - 1.0 + 0x1p-54));
  const double theta = 2.0 * std::numbers::pi * u1;
  return {r * std::cos(theta), r * std::sin(theta)};
}

}  // namespace sarcint::rng
