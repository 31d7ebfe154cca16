// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

namespace satnet {

// Deterministic seed derivation so that per-sample and per-link streams are
// independent of evaluation order.  splitmix64 finalizer as the mixer.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a) {
  return mix_seed(master ^ mix_seed(a));
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b) {
  return mix_seed(derive_seed(master, a) ^ mix_seed(~b));
}

using Rng = std::mt19937_64;

}  // namespace satnet
