#pragma once

#include <cstdint>
#include <random>

namespace lll {

using Rng = std::mt19937_64;

// splitmix64 step (Steele/Lea/Flood). Used to scramble seeds and to derive
// independent per-trial streams from one root seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-splitting rule: stream s of root seed r is splitmix64 iterated
// twice on r xor (s+1). Trials, retries and parallel workers each get their
// own stream index, so runs are reproducible regardless of scheduling.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
  std::uint64_t state = root ^ (stream + 1);
  splitmix64(state);
  return splitmix64(state);
}

inline Rng make_rng(std::uint64_t root, std::uint64_t stream = 0) {
  return Rng(derive_seed(root, stream));
}

}  // namespace lll
