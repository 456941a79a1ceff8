#pragma once

#include <cstdint>

namespace aip {

// splitmix64. Every random stream in the tool (pixel jitter, soft shadows,
// trajectories, splits) is one of these so that outputs can be reproduced
// bit-for-bit from a seed in any language.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t Next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 bits of precision.
  double Uniform() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Uniform integer in [0, bound). Plain modulo reduction; the small bias is
  // accepted in exchange for a trivially portable definition.
  std::uint64_t Below(std::uint64_t bound) { return Next() % bound; }

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

// Seed of the per-pixel stream used by the color pass.
std::uint64_t PixelSeed(std::uint64_t frame_seed, int x, int y, int width);

}  // namespace aip
