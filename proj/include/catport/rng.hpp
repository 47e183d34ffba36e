#pragma once

#include <cstdint>

namespace catport {

// SplitMix64 (Steele, Lea & Flood's SplittableRandom mix). Small, fast, passes
// BigCrush, and trivially reproducible across platforms: everything is exact
// 64-bit integer arithmetic.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), from the top 53 bits.
  double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

private:
  std::uint64_t state_;
};

// Independent stream for one sample index under a run seed. The stream base is
// itself a SplitMix64 output of the lattice point seed + (index+1)*gamma;
// scrambling the base this way keeps distinct streams on unrelated orbits of
// the underlying +gamma walk (with plain arithmetic bases, draw k of stream i
// would collide with draw 0 of stream i+k). Results therefore depend only on
// (seed, index), never on how many samples other workers have consumed.
inline SplitMix64 stream_for(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 seeder(seed + (index + 1) * 0x9E3779B97F4A7C15ull);
  return SplitMix64(seeder.next_u64());
}

} // namespace catport
