#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mtbalign/bitmap.hpp"
#include "mtbalign/core_image.hpp"
#include "mtbalign/parallel.hpp"
#include "mtbalign/pyramid.hpp"

namespace mtb {

inline constexpr int default_noise_tolerance = 4;

struct Histogram256 {
  std::array<std::uint64_t, 256> bins{};
  std::uint64_t total = 0;

  Histogram256& operator+=(const Histogram256& o) {
    for (std::size_t i = 0; i < bins.size(); ++i) bins[i] += o.bins[i];
    total += o.total;
    return *this;
  }
  friend bool operator==(const Histogram256&, const Histogram256&) = default;
};

/// 256-bin histogram. Each worker fills a private histogram over its row band;
/// the partials are summed.
inline Histogram256 histogram(const GrayImage& img, int workers = 1) {
  return reduce_bands<Histogram256>(std::size_t(img.height()), workers, rows_per_grain(img.width()),
                                    [&](std::size_t y0, std::size_t y1) {
                                      Histogram256 h;
                                      for (std::size_t y = y0; y < y1; ++y)
                                        for (std::uint8_t v : img.row(int(y))) ++h.bins[v];
                                      h.total = (y1 - y0) * std::size_t(img.width());
                                      return h;
                                    });
}

/// Lower median: the smallest value whose cumulative count reaches ceil(total/2).
inline std::uint8_t median_from_histogram(const Histogram256& h) {
  if (h.total == 0) throw std::invalid_argument("median_from_histogram: empty histogram");
  const std::uint64_t half = (h.total + 1) / 2;
  std::uint64_t cumulative = 0;
  for (std::size_t v = 0; v < h.bins.size(); ++v) {
    cumulative += h.bins[v];
    if (cumulative >= half) return std::uint8_t(v);
  }
  throw std::invalid_argument("median_from_histogram: bins do not sum to total");
}

namespace detail {

template <class Pred>
Bitmap threshold_map(const GrayImage& img, Layout layout, int workers, Pred pred) {
  Bitmap out(img.width(), img.height(), layout);
  for_each_band(std::size_t(img.height()), workers, rows_per_grain(img.width()), [&](std::size_t y0, std::size_t y1) {
    for (std::size_t y = y0; y < y1; ++y) {
      const auto src = img.row(int(y));
      if (layout == Layout::ByteMap) {
        auto dst = out.byte_row(int(y));
        for (std::size_t x = 0; x < src.size(); ++x) dst[x] = pred(src[x]) ? 0xFF : 0x00;
      } else {
        auto dst = out.word_row(int(y));
        for (std::size_t k = 0; k < dst.size(); ++k) {
          Bitmap::Word w = 0;
          const std::size_t base = k * Bitmap::word_bits;
          const std::size_t n = std::min<std::size_t>(Bitmap::word_bits, src.size() - base);
          for (std::size_t i = 0; i < n; ++i) w |= Bitmap::Word(pred(src[base + i])) << i;
          dst[k] = w;
        }
      }
    }
  });
  return out;
}

}  // namespace detail

/// Median threshold bitmap: 1 where the pixel is strictly above the median.
inline Bitmap make_mtb(const GrayImage& img, std::uint8_t median, Layout layout, int workers = 1) {
  return detail::threshold_map(img, layout, workers, [median](std::uint8_t v) { return v > median; });
}

/// Exclusion bitmap: 1 marks a reliable pixel, |pixel - median| > tol.
/// Pixels within the tolerance band are 0 and drop out of the error count.
inline Bitmap make_exclusion(const GrayImage& img, std::uint8_t median, std::uint8_t tol, Layout layout,
                             int workers = 1) {
  return detail::threshold_map(img, layout, workers, [median, tol](std::uint8_t v) {
    const int d = int(v) - int(median);
    return (d < 0 ? -d : d) > int(tol);
  });
}

struct MtbPair {
  Bitmap mtb;
  Bitmap exclusion;
  std::uint8_t median = 0;
  std::uint8_t noise_tolerance = default_noise_tolerance;

  int width() const { return mtb.width(); }
  int height() const { return mtb.height(); }
};

inline MtbPair make_mtb_pair(const GrayImage& img, std::uint8_t tol, Layout layout, int workers = 1) {
  const std::uint8_t median = median_from_histogram(histogram(img, workers));
  return {make_mtb(img, median, layout, workers), make_exclusion(img, median, tol, layout, workers), median, tol};
}

/// One MtbPair per pyramid level, each from that level's own median.
using MtbPyramid = std::vector<MtbPair>;

inline MtbPyramid build_mtb_pyramid(const GrayPyramid& p, std::uint8_t tol, Layout layout, int workers = 1) {
  MtbPyramid out;
  out.reserve(p.levels.size());
  for (const auto& level : p.levels) out.push_back(make_mtb_pair(level, tol, layout, workers));
  return out;
}

}  // namespace mtb
