#pragma once

#include <cstdint>

#include "hindman/dyadic.hpp"

namespace hindman::detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) { return splitmix64(h ^ splitmix64(v)); }

inline std::uint64_t hash_natural(std::uint64_t h, Natural x) {
  const Natural mask = (Natural(1) << 64) - 1;
  do {
    h = hash_combine(h, static_cast<std::uint64_t>(x & mask));
    x >>= 64;
  } while (x != 0);
  return h;
}

// Pseudo-random value in [0, 2^bits) derived from `h`.
inline Natural random_bits(std::uint64_t h, int bits) {
  Natural out = 0;
  for (int word = 0; word * 64 < bits; ++word) {
    out |= Natural(hash_combine(h, static_cast<std::uint64_t>(word))) << (64 * word);
  }
  return out & (pow2(bits) - 1);
}

}  // namespace hindman::detail
