#pragma once

// Random image generators and scalar reference implementations used as
// oracles. Nothing here calls into the library's kernels.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "mtbalign/bitmap.hpp"
#include "mtbalign/core_image.hpp"

namespace mtb::testing {

using Rng = std::mt19937_64;

inline GrayImage random_gray(Rng& rng, int w, int h) {
  GrayImage img(w, h);
  std::uniform_int_distribution<int> d(0, 255);
  for (auto& v : img.data()) v = std::uint8_t(d(rng));
  return img;
}

inline RgbImage random_rgb(Rng& rng, int w, int h) {
  RgbImage img(w, h);
  std::uniform_int_distribution<int> d(0, 255);
  for (auto& v : img.data()) v = std::uint8_t(d(rng));
  return img;
}

/// Value noise: random samples on a grid of `cell` pixels, bilinearly
/// interpolated, plus +-`jitter` per-pixel noise. Smooth enough to survive
/// pyramid downsampling.
inline GrayImage smooth_gray(Rng& rng, int w, int h, int cell = 8, int jitter = 0) {
  const int gw = w / cell + 2, gh = h / cell + 2;
  std::uniform_real_distribution<double> d(0, 255);
  std::vector<double> grid(std::size_t(gw) * std::size_t(gh));
  for (auto& g : grid) g = d(rng);
  std::uniform_int_distribution<int> j(-jitter, jitter);
  GrayImage img(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double fx = double(x) / cell, fy = double(y) / cell;
      const int ix = int(fx), iy = int(fy);
      const double tx = fx - ix, ty = fy - iy;
      auto g = [&](int gx, int gy) { return grid[std::size_t(gy) * std::size_t(gw) + std::size_t(gx)]; };
      const double v = (1 - ty) * ((1 - tx) * g(ix, iy) + tx * g(ix + 1, iy)) +
                       ty * ((1 - tx) * g(ix, iy + 1) + tx * g(ix + 1, iy + 1));
      img.at(x, y) = std::uint8_t(std::clamp<long>(std::lround(v) + (jitter ? j(rng) : 0), 0, 255));
    }
  return img;
}

inline RgbImage gray_to_rgb(const GrayImage& g) {
  RgbImage out(g.width(), g.height());
  for (int y = 0; y < g.height(); ++y)
    for (int x = 0; x < g.width(); ++x)
      for (int c = 0; c < 3; ++c) out.at(x, y, std::size_t(c)) = g.at(x, y);
  return out;
}

/// Crop [x0, x0+w) x [y0, y0+h).
inline GrayImage crop(const GrayImage& g, int x0, int y0, int w, int h) {
  GrayImage out(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) out.at(x, y) = g.at(x0 + x, y0 + y);
  return out;
}

inline RgbImage crop(const RgbImage& g, int x0, int y0, int w, int h) {
  RgbImage out(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (std::size_t c = 0; c < 3; ++c) out.at(x, y, c) = g.at(x0 + x, y0 + y, c);
  return out;
}

/// A tone curve that is strictly increasing on the values occupied by `img`
/// (arbitrary elsewhere): occupied values are sent, in order, to a random
/// sorted set of distinct outputs.
inline std::array<std::uint8_t, 256> random_monotone_curve(Rng& rng, const GrayImage& img) {
  std::array<bool, 256> used{};
  for (auto v : img.data()) used[v] = true;
  const auto k = std::size_t(std::count(used.begin(), used.end(), true));
  std::vector<int> outputs(256);
  for (int i = 0; i < 256; ++i) outputs[std::size_t(i)] = i;
  std::shuffle(outputs.begin(), outputs.end(), rng);
  outputs.resize(k);
  std::sort(outputs.begin(), outputs.end());
  std::array<std::uint8_t, 256> curve{};
  std::size_t next = 0;
  int last = 0;
  for (int v = 0; v < 256; ++v) {
    if (used[std::size_t(v)]) last = outputs[next++];
    curve[std::size_t(v)] = std::uint8_t(last);
  }
  return curve;
}

inline GrayImage apply_curve(const GrayImage& img, const std::array<std::uint8_t, 256>& curve) {
  GrayImage out = img;
  for (auto& v : out.data()) v = curve[v];
  return out;
}

/// Plain row-major boolean raster.
struct BoolGrid {
  int w = 0, h = 0;
  std::vector<char> v;
  BoolGrid(int w_, int h_) : w(w_), h(h_), v(std::size_t(w_) * std::size_t(h_), 0) {}
  bool at(int x, int y) const { return v[std::size_t(y) * std::size_t(w) + std::size_t(x)] != 0; }
  char& at(int x, int y) { return v[std::size_t(y) * std::size_t(w) + std::size_t(x)]; }
};

inline BoolGrid random_grid(Rng& rng, int w, int h, double p = 0.5) {
  BoolGrid g(w, h);
  std::bernoulli_distribution d(p);
  for (auto& c : g.v) c = d(rng) ? 1 : 0;
  return g;
}

inline Bitmap to_bitmap(const BoolGrid& g, Layout layout) {
  return Bitmap::from_predicate(g.w, g.h, layout, [&](int x, int y) { return g.at(x, y); });
}

/// sum_x (a(x) xor b(x+o)) and ea(x) and eb(x+o), over pixels where x+o is inside.
inline std::size_t scalar_shifted_error(const BoolGrid& a, const BoolGrid& ea, const BoolGrid& b, const BoolGrid& eb,
                                        ShiftOffset o) {
  std::size_t n = 0;
  for (int y = 0; y < a.h; ++y)
    for (int x = 0; x < a.w; ++x) {
      const int bx = x + o.dx, by = y + o.dy;
      if (bx < 0 || by < 0 || bx >= a.w || by >= a.h) continue;
      n += std::size_t((a.at(x, y) != b.at(bx, by)) && ea.at(x, y) && eb.at(bx, by));
    }
  return n;
}

/// Median by sorting: the element at index ceil(n/2) - 1.
inline std::uint8_t sorted_lower_median(const GrayImage& img) {
  std::vector<std::uint8_t> v(img.data().begin(), img.data().end());
  std::sort(v.begin(), v.end());
  return v[(v.size() + 1) / 2 - 1];
}

inline BoolGrid scalar_mtb(const GrayImage& img, std::uint8_t median) {
  BoolGrid g(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) g.at(x, y) = img.at(x, y) > median;
  return g;
}

inline BoolGrid scalar_exclusion(const GrayImage& img, std::uint8_t median, int tol) {
  BoolGrid g(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) g.at(x, y) = std::abs(int(img.at(x, y)) - int(median)) > tol;
  return g;
}

/// out(x) = in(x - o), fill outside.
inline GrayImage scalar_shift(const GrayImage& img, ShiftOffset o, std::uint8_t fill) {
  GrayImage out(img.width(), img.height(), fill);
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) {
      const int sx = x - o.dx, sy = y - o.dy;
      if (sx >= 0 && sy >= 0 && sx < img.width() && sy < img.height()) out.at(x, y) = img.at(sx, sy);
    }
  return out;
}

}  // namespace mtb::testing
