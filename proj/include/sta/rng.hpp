#pragma once

#include <cstdint>
#include <random>

// Seed derivation and bounded draws. Everything here is fully specified so
// that episodes replay bit-identically across platforms and releases:
// std::mt19937_64 is pinned by the C++ standard, and the bounded draw below
// avoids the implementation-defined std::uniform_int_distribution.

namespace sta {

// splitmix64 finalizer; used for all seed mixing.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Draw from [0, bound) via 128-bit multiply-shift. Bias is at most
// bound / 2^64, and the result is identical on every conforming platform.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(rng()) * bound) >> 64);
}

// Stream tags keep the task-placement draws and the policy draws of one
// episode decorrelated even though both derive from the same episode seed.
inline constexpr std::uint64_t kPlacementStream = 0x706c6163ULL;  // "plac"
inline constexpr std::uint64_t kPolicyStream = 0x706f6cULL;       // "pol"

inline constexpr std::uint64_t derive_seed(std::uint64_t seed,
                                           std::uint64_t stream) {
  return mix64(seed ^ mix64(stream));
}

// Sub-seed for episode `episode_index` under the root seed found at position
// `seed_index` of an evaluation's seed list. Appending seeds to the list
// never perturbs the streams of earlier seeds.
inline constexpr std::uint64_t episode_seed(std::uint64_t root_seed,
                                            std::uint64_t seed_index,
                                            std::uint64_t episode_index) {
  return mix64(mix64(root_seed ^ mix64(seed_index + 1)) ^
               mix64(episode_index + 1));
}

}  // namespace sta
