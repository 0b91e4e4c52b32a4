#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "mtbalign/core_image.hpp"
#include "mtbalign/parallel.hpp"

namespace mtb {

/// Smallest width and height any pyramid level may have.
inline constexpr int min_level_size = 16;
inline constexpr int default_levels = 6;

/// Halves both dimensions (floor) by averaging each 2x2 block with
/// round-half-up. A trailing odd row or column is dropped.
inline GrayImage downsample_half(const GrayImage& img, int workers = 1) {
  if (img.width() < 2 || img.height() < 2) throw std::invalid_argument("downsample_half: image smaller than 2x2");
  GrayImage out(img.width() / 2, img.height() / 2);
  for_each_band(std::size_t(out.height()), workers, rows_per_grain(img.width() * 2),
                [&](std::size_t y0, std::size_t y1) {
                  for (std::size_t y = y0; y < y1; ++y) {
                    auto top = img.row(int(2 * y));
                    auto bottom = img.row(int(2 * y + 1));
                    auto dst = out.row(int(y));
                    for (std::size_t x = 0; x < dst.size(); ++x) {
                      const unsigned sum = unsigned(top[2 * x]) + top[2 * x + 1] + bottom[2 * x] + bottom[2 * x + 1];
                      dst[x] = std::uint8_t((sum + 2) >> 2);
                    }
                  }
                });
  return out;
}

/// Number of levels actually built for a width x height base when
/// `requested` are asked for: every level stays at least 16x16.
inline int clamp_levels(int width, int height, int requested) {
  if (requested < 1) throw std::invalid_argument("pyramid level count must be positive");
  int levels = 1;
  while (levels < requested && width / 2 >= min_level_size && height / 2 >= min_level_size) {
    width /= 2;
    height /= 2;
    ++levels;
  }
  return levels;
}

/// Grayscale pyramid; level 0 is full resolution.
struct GrayPyramid {
  std::vector<GrayImage> levels;

  int level_count() const { return int(levels.size()); }
  const GrayImage& operator[](std::size_t i) const { return levels[i]; }
};

inline GrayPyramid build_pyramid(GrayImage img, int requested_levels, int workers = 1) {
  if (img.width() < min_level_size || img.height() < min_level_size)
    throw std::invalid_argument("build_pyramid: image smaller than 16x16");
  const int n = clamp_levels(img.width(), img.height(), requested_levels);
  GrayPyramid p;
  p.levels.reserve(std::size_t(n));
  p.levels.push_back(std::move(img));
  for (int i = 1; i < n; ++i) p.levels.push_back(downsample_half(p.levels.back(), workers));
  return p;
}

}  // namespace mtb
