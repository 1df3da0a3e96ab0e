#pragma once

#include <cstdint>
#include <random>

namespace srs {

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

// Independent trials draw from master_seed + trial_index.
inline std::uint64_t child_seed(std::uint64_t master_seed, std::uint64_t trial) {
  return master_seed + trial;
}

}  // namespace srs
