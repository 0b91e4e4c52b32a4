#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mtbalign/parallel.hpp"

namespace mtb {

/// Signed whole-pixel translation. Positive dx moves content right,
/// positive dy moves content down (row index increases).
struct ShiftOffset {
  int dx = 0;
  int dy = 0;

  friend constexpr bool operator==(ShiftOffset, ShiftOffset) = default;
  constexpr ShiftOffset operator+(ShiftOffset o) const { return {dx + o.dx, dy + o.dy}; }
  constexpr ShiftOffset operator-(ShiftOffset o) const { return {dx - o.dx, dy - o.dy}; }
  constexpr ShiftOffset operator-() const { return {-dx, -dy}; }
  constexpr ShiftOffset operator*(int k) const { return {dx * k, dy * k}; }
};

inline std::string to_string(ShiftOffset o) {
  return std::to_string(o.dx) + " " + std::to_string(o.dy);
}

namespace detail {

template <std::size_t Channels>
class Raster {
 public:
  static constexpr std::size_t channels = Channels;

  Raster() = default;
  Raster(int width, int height, std::uint8_t value = 0) : width_(width), height_(height) {
    check_dims(width, height);
    data_.assign(std::size_t(width) * std::size_t(height) * Channels, value);
  }
  Raster(int width, int height, std::vector<std::uint8_t> data)
      : width_(width), height_(height), data_(std::move(data)) {
    check_dims(width, height);
    if (data_.size() != std::size_t(width) * std::size_t(height) * Channels)
      throw std::invalid_argument("raster data length does not match dimensions");
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t pixel_count() const { return std::size_t(width_) * std::size_t(height_); }
  bool empty() const { return data_.empty(); }

  std::span<const std::uint8_t> data() const { return data_; }
  std::span<std::uint8_t> data() { return data_; }

  std::span<const std::uint8_t> row(int y) const {
    return {data_.data() + std::size_t(y) * row_stride(), row_stride()};
  }
  std::span<std::uint8_t> row(int y) {
    return {data_.data() + std::size_t(y) * row_stride(), row_stride()};
  }
  std::size_t row_stride() const { return std::size_t(width_) * Channels; }

  std::uint8_t& at(int x, int y, std::size_t c = 0) {
    return data_[(std::size_t(y) * std::size_t(width_) + std::size_t(x)) * Channels + c];
  }
  std::uint8_t at(int x, int y, std::size_t c = 0) const {
    return data_[(std::size_t(y) * std::size_t(width_) + std::size_t(x)) * Channels + c];
  }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  static void check_dims(int width, int height) {
    if (width < 1 || height < 1) throw std::invalid_argument("raster dimensions must be positive");
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

}  // namespace detail

/// Interleaved 8-bit R,G,B raster, row-major.
using RgbImage = detail::Raster<3>;
/// 8-bit luminance raster, row-major.
using GrayImage = detail::Raster<1>;

using Rgb = std::array<std::uint8_t, 3>;

/// Integer luminance with weights 54/183/19 over 256; white maps to 255.
constexpr std::uint8_t luminance(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  return std::uint8_t((54u * r + 183u * g + 19u * b) >> 8);
}

inline GrayImage to_grayscale(const RgbImage& img, int workers = 1) {
  GrayImage out(img.width(), img.height());
  for_each_band(std::size_t(img.height()), workers, rows_per_grain(img.width()),
                [&](std::size_t y0, std::size_t y1) {
                  for (std::size_t y = y0; y < y1; ++y) {
                    auto src = img.row(int(y));
                    auto dst = out.row(int(y));
                    for (std::size_t x = 0; x < dst.size(); ++x)
                      dst[x] = luminance(src[3 * x], src[3 * x + 1], src[3 * x + 2]);
                  }
                });
  return out;
}

namespace detail {

// out(x, y) = in(x - dx, y - dy), vacated pixels take `fill`.
template <std::size_t C>
Raster<C> shift_raster(const Raster<C>& img, ShiftOffset offset, std::span<const std::uint8_t, C> fill,
                       int workers) {
  const int w = img.width();
  const int h = img.height();
  Raster<C> out(w, h);
  // Destination columns [x0, x1) have an in-bounds source.
  const int x0 = int(std::clamp<long long>(offset.dx, 0, w));
  const int x1 = int(std::clamp<long long>(static_cast<long long>(w) + offset.dx, 0, w));
  for_each_band(std::size_t(h), workers, rows_per_grain(w), [&](std::size_t y0, std::size_t y1) {
    for (int y = int(y0); y < int(y1); ++y) {
      auto dst = out.row(y);
      for (std::size_t i = 0; i < dst.size(); i += C)
        std::copy(fill.begin(), fill.end(), dst.begin() + std::ptrdiff_t(i));
      const long long sy = static_cast<long long>(y) - offset.dy;
      if (sy < 0 || sy >= h || x0 >= x1) continue;
      auto src = img.row(int(sy));
      std::copy_n(src.begin() + std::ptrdiff_t(std::size_t(static_cast<long long>(x0) - offset.dx) * C),
                  std::size_t(x1 - x0) * C, dst.begin() + std::ptrdiff_t(std::size_t(x0) * C));
    }
  });
  return out;
}

}  // namespace detail

inline RgbImage shift_rgb(const RgbImage& img, ShiftOffset offset, Rgb fill = {0, 0, 0},
                          int workers = 1) {
  return detail::shift_raster<3>(img, offset, std::span<const std::uint8_t, 3>(fill), workers);
}

inline GrayImage shift_gray(const GrayImage& img, ShiftOffset offset, std::uint8_t fill = 0,
                            int workers = 1) {
  const std::array<std::uint8_t, 1> f{fill};
  return detail::shift_raster<1>(img, offset, std::span<const std::uint8_t, 1>(f), workers);
}

}  // namespace mtb
