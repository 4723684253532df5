#pragma once

#include <cstdint>
#include <random>

namespace rflight {

/// Every sampler takes one of these by reference; streams are owned by the
/// caller and never shared between threads.
using RandomStream = std::mt19937_64;

/// SplitMix64 finalizer, used to decorrelate derived seeds.
constexpr std::uint64_t mix_seed(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Stream for replicate `index` under `master_seed`. Depends only on the
/// pair, so batch results do not depend on how replicates are scheduled.
inline RandomStream derive_stream(std::uint64_t master_seed, std::uint64_t index) {
  return RandomStream(mix_seed(mix_seed(master_seed) ^ mix_seed(index + 0x5851f42d4c957f2dULL)));
}

}  // namespace rflight
