#pragma once

#include <array>
#include <cstdint>
#include <utility>

namespace sarcint::rng {

// Philox4x32-10 counter-based generator.  Every draw is a pure function of
// (key, counter), which is what makes simulations replayable entry-by-entry
// regardless of evaluation order or thread count.

struct Philox4x32State {
  std::array<std::uint32_t, 4> counter;
  std::array<std::uint32_t, 2> key;
};

/// One Philox4x32 block: 10 bumped-key SP rounds, 128 output bits.
std::array<std::uint32_t, 4> philox4x32_10(const std::array<std::uint32_t, 4>& counter,
                                           const std::array<std::uint32_t, 2>& key);

/// Identifies an independent random stream.  `stream` separates uses
/// (medium draws, measurement noise, retrieval phase init) and
/// `realization` indexes Monte Carlo repetitions.
struct StreamKey {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::uint64_t realization = 0;
};

inline constexpr std::uint64_t kStreamMedium = 1;
inline constexpr std::uint64_t kStreamNoise = 2;
inline constexpr std::uint64_t kStreamPhaseInit = 3;

/// Four uniform 32-bit words for element `index` of the keyed stream.
std::array<std::uint32_t, 4> random_words(const StreamKey& key, std::uint64_t index);

/// Two independent U[0,1) doubles (53-bit) for element `index`.
std::pair<double, double> uniform_pair(const StreamKey& key, std::uint64_t index);

/// Two independent standard normal doubles for element `index` (Box-Muller).
std::pair<double, double> normal_pair(const StreamKey& key, std::uint64_t index);

}  // namespace sarcint::rng
