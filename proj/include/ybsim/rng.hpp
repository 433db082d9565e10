#pragma once

#include <cstdint>

namespace ybsim {

using u128 = unsigned __int128;

// SplitMix64: tiny, seedable, and cheap to fork into per-sample streams.
struct SplitMix64 {
  uint64_t state = 0;

  explicit SplitMix64(uint64_t seed = 0) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform m-bit integer, m in [1, 126]; words drawn low to high
  u128 next_bits(int m) {
    u128 v = next();
    if (m > 64) v |= u128(next()) << 64;
    if (m < 128) v &= (u128(1) << m) - 1;
    return v;
  }

  // uniform in [0, 1) with 53 random bits
  double uniform01() { return double(next() >> 11) * 0x1.0p-53; }
};

// independent stream for one sample index: serial and parallel runs that
// process the same indices see the same draws
inline SplitMix64 derive_stream(uint64_t seed, uint64_t index) {
  SplitMix64 h(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
  uint64_t s = h.next();
  return SplitMix64(s);
}

}  // namespace ybsim
