#include "subtok/shuffle.hpp"

#include <numeric>
#include <utility>

namespace subtok::rng {

std::uint64_t SplitMix64::bounded(std::uint64_t bound) {
  // Values below threshold would fold unevenly under % bound.
  std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

std::vector<std::int64_t> seeded_permutation(std::int64_t n, std::uint64_t seed) {
  std::vector<std::int64_t> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), std::int64_t{0});
  SplitMix64 gen(seed);
  for (std::int64_t i = n - 1; i > 0; --i) {
    std::uint64_t j = gen.bounded(static_cast<std::uint64_t>(i) + 1);
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  return perm;
}

}  // namespace subtok::rng
