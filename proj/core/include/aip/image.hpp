#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace aip {

// Interleaved, row-major image with a compile-time channel count.
template <typename T, int Channels>
struct Image {
  static constexpr int kChannels = Channels;
  using value_type = T;

  int width = 0;
  int height = 0;
  std::vector<T> data;

  Image() = default;
  Image(int w, int h, T fill = T{})
      : width(w),
        height(h),
        data(static_cast<std::size_t>(w) * h * Channels, fill) {}

  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width) * height;
  }
  bool empty() const { return data.empty(); }

  T& at(int x, int y, int c = 0) {
    assert(x >= 0 && x < width && y >= 0 && y < height);
    return data[(static_cast<std::size_t>(y) * width + x) * Channels + c];
  }
  const T& at(int x, int y, int c = 0) const {
    assert(x >= 0 && x < width && y >= 0 && y < height);
    return data[(static_cast<std::size_t>(y) * width + x) * Channels + c];
  }

  std::span<T> row(int y) {
    return {data.data() + static_cast<std::size_t>(y) * width * Channels,
            static_cast<std::size_t>(width) * Channels};
  }
  std::span<const T> row(int y) const {
    return {data.data() + static_cast<std::size_t>(y) * width * Channels,
            static_cast<std::size_t>(width) * Channels};
  }

  bool operator==(const Image&) const = default;
};

using ImageRgb8 = Image<std::uint8_t, 3>;
using ImageGray8 = Image<std::uint8_t, 1>;
using ImageGray16 = Image<std::uint16_t, 1>;
using ImageRgbF = Image<float, 3>;
using ImageU32 = Image<std::uint32_t, 1>;

}  // namespace aip
