#pragma once

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "mtbalign/core_image.hpp"
#include "mtbalign/parallel.hpp"

namespace mtb {

/// Physical storage of a Bitmap.
///   ByteMap    one byte per pixel, 0 or 255
///   WordPacked one bit per pixel, LSB-first in 64-bit words, rows padded to
///              whole words with zero bits
enum class Layout { ByteMap, WordPacked };

constexpr std::string_view layout_name(Layout l) {
  return l == Layout::ByteMap ? "bytemap" : "packed";
}

class Bitmap {
 public:
  using Word = std::uint64_t;
  static constexpr int word_bits = 64;

  Bitmap() = default;
  Bitmap(int width, int height, Layout layout) : width_(width), height_(height), layout_(layout) {
    if (width < 1 || height < 1) throw std::invalid_argument("bitmap dimensions must be positive");
    if (layout == Layout::ByteMap)
      bytes_.assign(std::size_t(width) * std::size_t(height), 0);
    else
      words_.assign(words_per_row() * std::size_t(height), 0);
  }

  /// Bitmap whose pixel (x, y) is pred(x, y).
  template <class Pred>
  static Bitmap from_predicate(int width, int height, Layout layout, Pred&& pred) {
    Bitmap b(width, height, layout);
    for (int y = 0; y < height; ++y)
      for (int x = 0; x < width; ++x)
        if (pred(x, y)) b.set(x, y, true);
    return b;
  }

  /// Bitmap from a row-major raster of truth values (nonzero = set).
  static Bitmap from_bytes(int width, int height, std::span<const std::uint8_t> values, Layout layout) {
    if (values.size() != std::size_t(width) * std::size_t(height))
      throw std::invalid_argument("bitmap_from_bytes: value count does not match dimensions");
    return from_predicate(width, height, layout,
                          [&](int x, int y) { return values[std::size_t(y) * std::size_t(width) + std::size_t(x)] != 0; });
  }

  int width() const { return width_; }
  int height() const { return height_; }
  Layout layout() const { return layout_; }
  std::size_t words_per_row() const { return (std::size_t(width_) + word_bits - 1) / word_bits; }

  bool get(int x, int y) const {
    assert(x >= 0 && x < width_ && y >= 0 && y < height_);
    if (layout_ == Layout::ByteMap) return bytes_[index(x, y)] != 0;
    return (words_[std::size_t(y) * words_per_row() + std::size_t(x) / word_bits] >> (x % word_bits)) & 1u;
  }

  void set(int x, int y, bool value) {
    assert(x >= 0 && x < width_ && y >= 0 && y < height_);
    if (layout_ == Layout::ByteMap) {
      bytes_[index(x, y)] = value ? 0xFF : 0x00;
      return;
    }
    Word& w = words_[std::size_t(y) * words_per_row() + std::size_t(x) / word_bits];
    const Word mask = Word{1} << (x % word_bits);
    w = value ? (w | mask) : (w & ~mask);
  }

  std::span<const std::uint8_t> byte_row(int y) const {
    assert(layout_ == Layout::ByteMap);
    return {bytes_.data() + std::size_t(y) * std::size_t(width_), std::size_t(width_)};
  }
  std::span<std::uint8_t> byte_row(int y) {
    assert(layout_ == Layout::ByteMap);
    return {bytes_.data() + std::size_t(y) * std::size_t(width_), std::size_t(width_)};
  }
  std::span<const Word> word_row(int y) const {
    assert(layout_ == Layout::WordPacked);
    return {words_.data() + std::size_t(y) * words_per_row(), words_per_row()};
  }
  std::span<Word> word_row(int y) {
    assert(layout_ == Layout::WordPacked);
    return {words_.data() + std::size_t(y) * words_per_row(), words_per_row()};
  }

  /// Mask of the valid bits in the last word of each WordPacked row.
  Word tail_mask() const {
    const int r = width_ % word_bits;
    return r == 0 ? ~Word{0} : (Word{1} << r) - 1;
  }

  bool same_shape(const Bitmap& o) const { return width_ == o.width_ && height_ == o.height_; }

  /// Logical equality; layouts may differ.
  friend bool operator==(const Bitmap& a, const Bitmap& b) {
    if (!a.same_shape(b)) return false;
    if (a.layout_ == b.layout_) return a.bytes_ == b.bytes_ && a.words_ == b.words_;
    for (int y = 0; y < a.height_; ++y)
      for (int x = 0; x < a.width_; ++x)
        if (a.get(x, y) != b.get(x, y)) return false;
    return true;
  }

 private:
  std::size_t index(int x, int y) const { return std::size_t(y) * std::size_t(width_) + std::size_t(x); }

  int width_ = 0;
  int height_ = 0;
  Layout layout_ = Layout::WordPacked;
  std::vector<std::uint8_t> bytes_;
  std::vector<Word> words_;
};

inline std::size_t count_ones(const Bitmap& b, int workers = 1) {
  return reduce_bands<std::size_t>(std::size_t(b.height()), workers, rows_per_grain(b.width()),
                                   [&](std::size_t y0, std::size_t y1) {
                                     std::size_t n = 0;
                                     for (std::size_t y = y0; y < y1; ++y) {
                                       if (b.layout() == Layout::ByteMap) {
                                         std::uint64_t sum = 0;
                                         for (std::uint8_t v : b.byte_row(int(y))) sum += v;
                                         n += std::size_t(sum / 0xFF);
                                       } else {
                                         for (Bitmap::Word w : b.word_row(int(y))) n += std::size_t(std::popcount(w));
                                       }
                                     }
                                     return n;
                                   });
}

namespace detail {

// 64 bits of `row` starting at bit `start` (may be negative or past the end);
// bits outside the row read as zero.
inline Bitmap::Word extract_word(std::span<const Bitmap::Word> row, long long start) {
  const long long n = static_cast<long long>(row.size());
  long long q = start >= 0 ? start / 64 : -((-start + 63) / 64);
  const int r = int(start - q * 64);
  auto word = [&](long long i) -> Bitmap::Word { return (i >= 0 && i < n) ? row[std::size_t(i)] : 0; };
  if (r == 0) return word(q);
  return (word(q) >> r) | (word(q + 1) << (64 - r));
}

inline void require_same(const Bitmap& a, const Bitmap& b, const char* what) {
  if (!a.same_shape(b)) throw std::invalid_argument(std::string(what) + ": bitmap dimensions differ");
  if (a.layout() != b.layout()) throw std::invalid_argument(std::string(what) + ": bitmap layouts differ");
}

}  // namespace detail

/// Alignment error of `b` displaced by `offset` relative to `a`:
///
///   sum over (x, y) of  (a(x,y) xor b(x+dx, y+dy)) and ea(x,y) and eb(x+dx, y+dy)
///
/// Pixels whose partner falls outside `b` are not counted. If b is `a` shifted
/// by `offset` the overlap scores zero. Shift, XOR, AND and count are fused in
/// one pass over the overlap rows.
inline std::size_t shifted_error(const Bitmap& a, const Bitmap& ea, const Bitmap& b, const Bitmap& eb,
                                 ShiftOffset offset, int workers = 1) {
  detail::require_same(a, ea, "shifted_error");
  detail::require_same(a, b, "shifted_error");
  detail::require_same(a, eb, "shifted_error");
  const long long w = a.width();
  const long long h = a.height();
  const long long dx = offset.dx;
  const long long dy = offset.dy;
  const long long y_begin = std::max(0LL, -dy);
  const long long y_end = std::min(h, h - dy);
  const long long x_begin = std::max(0LL, -dx);
  const long long x_end = std::min(w, w - dx);
  if (y_begin >= y_end || x_begin >= x_end) return 0;

  const std::size_t rows = std::size_t(y_end - y_begin);
  if (a.layout() == Layout::ByteMap) {
    return reduce_bands<std::size_t>(rows, workers, rows_per_grain(a.width()), [&](std::size_t r0, std::size_t r1) {
      std::size_t n = 0;
      for (std::size_t r = r0; r < r1; ++r) {
        const int y = int(y_begin + (long long)r);
        const auto ra = a.byte_row(y).subspan(std::size_t(x_begin));
        const auto rea = ea.byte_row(y).subspan(std::size_t(x_begin));
        const auto rb = b.byte_row(int(y + dy)).subspan(std::size_t(x_begin + dx));
        const auto reb = eb.byte_row(int(y + dy)).subspan(std::size_t(x_begin + dx));
        const std::size_t len = std::size_t(x_end - x_begin);
        std::uint64_t sum = 0;
        for (std::size_t i = 0; i < len; ++i) sum += std::uint8_t((ra[i] ^ rb[i]) & rea[i] & reb[i]);
        n += std::size_t(sum / 0xFF);
      }
      return n;
    });
  }

  // WordPacked: extract b's row at bit offset dx word by word. Bits read past
  // either end of b's row come back as zero from eb, and a's padding bits are
  // zero in ea, so only the overlap contributes.
  return reduce_bands<std::size_t>(rows, workers, rows_per_grain(a.width()), [&](std::size_t r0, std::size_t r1) {
    std::size_t n = 0;
    for (std::size_t r = r0; r < r1; ++r) {
      const int y = int(y_begin + (long long)r);
      const auto ra = a.word_row(y);
      const auto rea = ea.word_row(y);
      const auto rb = b.word_row(int(y + dy));
      const auto reb = eb.word_row(int(y + dy));
      if (dx % 64 == 0) {
        const long long wshift = dx / 64;
        for (std::size_t k = 0; k < ra.size(); ++k) {
          const long long j = (long long)k + wshift;
          if (j < 0 || j >= (long long)rb.size()) continue;
          n += std::size_t(std::popcount((ra[k] ^ rb[std::size_t(j)]) & rea[k] & reb[std::size_t(j)]));
        }
      } else {
        for (std::size_t k = 0; k < ra.size(); ++k) {
          const long long start = (long long)k * 64 + dx;
          const Bitmap::Word wb = detail::extract_word(rb, start);
          const Bitmap::Word web = detail::extract_word(reb, start);
          n += std::size_t(std::popcount((ra[k] ^ wb) & rea[k] & web));
        }
      }
    }
    return n;
  });
}

/// out(x, y) = b(x - dx, y - dy); vacated pixels are 0.
inline Bitmap shift_bitmap(const Bitmap& b, ShiftOffset offset) {
  Bitmap out(b.width(), b.height(), b.layout());
  const long long w = b.width();
  const long long h = b.height();
  for (long long y = std::max(0LL, (long long)offset.dy); y < std::min(h, h + offset.dy); ++y) {
    for (long long x = std::max(0LL, (long long)offset.dx); x < std::min(w, w + offset.dx); ++x)
      if (b.get(int(x - offset.dx), int(y - offset.dy))) out.set(int(x), int(y), true);
  }
  return out;
}

namespace detail {

template <class Op>
Bitmap combine(const Bitmap& a, const Bitmap& b, Op op, const char* what) {
  require_same(a, b, what);
  Bitmap out(a.width(), a.height(), a.layout());
  for (int y = 0; y < a.height(); ++y) {
    if (a.layout() == Layout::ByteMap) {
      auto ra = a.byte_row(y), rb = b.byte_row(y);
      auto ro = out.byte_row(y);
      for (std::size_t i = 0; i < ro.size(); ++i) ro[i] = std::uint8_t(op(ra[i], rb[i]));
    } else {
      auto ra = a.word_row(y), rb = b.word_row(y);
      auto ro = out.word_row(y);
      for (std::size_t i = 0; i < ro.size(); ++i) ro[i] = op(ra[i], rb[i]);
    }
  }
  return out;
}

}  // namespace detail

inline Bitmap bitwise_xor(const Bitmap& a, const Bitmap& b) {
  return detail::combine(a, b, [](auto p, auto q) { return p ^ q; }, "bitwise_xor");
}

inline Bitmap bitwise_and(const Bitmap& a, const Bitmap& b) {
  return detail::combine(a, b, [](auto p, auto q) { return p & q; }, "bitwise_and");
}

/// Unfused reference route: shift b back by `offset`, XOR with a, AND both
/// exclusion maps, count. Matches shifted_error exactly.
inline std::size_t shifted_error_unfused(const Bitmap& a, const Bitmap& ea, const Bitmap& b, const Bitmap& eb,
                                         ShiftOffset offset) {
  const Bitmap sb = shift_bitmap(b, -offset);
  const Bitmap seb = shift_bitmap(eb, -offset);
  return count_ones(bitwise_and(bitwise_and(bitwise_xor(a, sb), ea), seb));
}

}  // namespace mtb
