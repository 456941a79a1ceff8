#include "aip/rng.hpp"

namespace aip {

std::uint64_t PixelSeed(std::uint64_t frame_seed, int x, int y, int width) {
  const auto index = static_cast<std::uint64_t>(y) *
                         static_cast<std::uint64_t>(width) +
                     static_cast<std::uint64_t>(x);
  return frame_seed ^ index;
}

}  // namespace aip
