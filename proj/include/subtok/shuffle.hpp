#pragma once

#include <cstdint>
#include <vector>

namespace subtok::rng {

// SplitMix64 (Steele, Lea, Flood). Pinned here so that seeded shuffles are
// bit-identical across platforms and standard library versions; std::mt19937
// plus std::shuffle would not be.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform value in [0, bound) by rejection sampling; no modulo bias.
  std::uint64_t bounded(std::uint64_t bound);

private:
  std::uint64_t state_;
};

// Fisher-Yates permutation of 0..n-1 driven by SplitMix64. The generator
// and loop order are part of the on-disk contract: identical (n, seed)
// always yields the identical permutation.
std::vector<std::int64_t> seeded_permutation(std::int64_t n, std::uint64_t seed);

// Name recorded in manifests for the scheme above.
inline constexpr const char* kPermutationName = "splitmix64-fisheryates-v1";

}  // namespace subtok::rng
