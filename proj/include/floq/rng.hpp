#pragma once

#include <cstdint>

namespace floq {

// splitmix64 stream. Small state, full 64-bit period, and cheap to reseed,
// which is what the per-sample seeding scheme needs: every disorder sample
// gets its own stream derived from (master seed, grid index, sample index),
// so results do not depend on scheduling order.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Counter-based seed derivation: each index is mixed through a full
// splitmix64 round, so nearby (grid, sample) pairs land far apart.
inline std::uint64_t derive_seed(std::uint64_t master_seed,
                                 std::uint64_t grid_index,
                                 std::uint64_t sample_index) {
  SplitMix64 g0(master_seed);
  SplitMix64 g1(g0.next() ^ (0x9e3779b97f4a7c15ULL * (grid_index + 1)));
  SplitMix64 g2(g1.next() ^ (0xc2b2ae3d27d4eb4fULL * (sample_index + 1)));
  return g2.next();
}

}  // namespace floq
