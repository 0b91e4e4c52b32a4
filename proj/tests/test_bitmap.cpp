#include <gtest/gtest.h>

#include "mtbalign/bitmap.hpp"
#include "test_support.hpp"

namespace mtb {
namespace {

using testing::BoolGrid;
using testing::Rng;

constexpr Layout kLayouts[] = {Layout::ByteMap, Layout::WordPacked};

class BitmapLayout : public ::testing::TestWithParam<Layout> {};

TEST_P(BitmapLayout, ConstantMaps) {
  const Layout l = GetParam();
  const Bitmap zeros(13, 7, l);
  const Bitmap ones = Bitmap::from_predicate(13, 7, l, [](int, int) { return true; });
  for (int y = 0; y < 7; ++y)
    for (int x = 0; x < 13; ++x) {
      EXPECT_FALSE(zeros.get(x, y));
      EXPECT_TRUE(ones.get(x, y));
    }
  EXPECT_EQ(count_ones(zeros), 0u);
  EXPECT_EQ(count_ones(Bitmap::from_predicate(7, 3, l, [](int, int) { return true; })), 21u);
}

TEST_P(BitmapLayout, FromBytes) {
  const Layout l = GetParam();
  EXPECT_EQ(count_ones(Bitmap::from_bytes(5, 5, std::vector<std::uint8_t>(25, 0), l)), 0u);
  EXPECT_EQ(count_ones(Bitmap::from_bytes(5, 5, std::vector<std::uint8_t>(25, 1), l)), 25u);
  std::vector<std::uint8_t> checker(16);
  for (int i = 0; i < 16; ++i) checker[std::size_t(i)] = std::uint8_t(((i % 4) + (i / 4)) % 2);
  EXPECT_EQ(count_ones(Bitmap::from_bytes(4, 4, checker, l)), 8u);
  EXPECT_THROW(Bitmap::from_bytes(4, 4, std::vector<std::uint8_t>(15), l), std::invalid_argument);
}

TEST_P(BitmapLayout, GetMatchesConstructionPattern) {
  const Layout l = GetParam();
  Rng rng(11);
  for (int w : {1, 63, 64, 65, 130}) {
    const BoolGrid g = testing::random_grid(rng, w, 9);
    const Bitmap b = testing::to_bitmap(g, l);
    for (int y = 0; y < g.h; ++y)
      for (int x = 0; x < g.w; ++x) ASSERT_EQ(b.get(x, y), g.at(x, y)) << w << " " << x << " " << y;
  }
}

TEST_P(BitmapLayout, CountMatchesNaiveLoop) {
  const Layout l = GetParam();
  Rng rng(12);
  for (int t = 0; t < 40; ++t) {
    const BoolGrid g = testing::random_grid(rng, 1 + int(rng() % 200), 1 + int(rng() % 50), 0.3);
    std::size_t naive = 0;
    for (char c : g.v) naive += std::size_t(c);
    ASSERT_EQ(count_ones(testing::to_bitmap(g, l), 4), naive);
  }
}

TEST_P(BitmapLayout, ShiftedErrorExamples) {
  const Layout l = GetParam();
  Rng rng(13);
  const int w = 37, h = 11;
  const BoolGrid a = testing::random_grid(rng, w, h);
  const Bitmap ma = testing::to_bitmap(a, l);
  const Bitmap all = Bitmap::from_predicate(w, h, l, [](int, int) { return true; });
  const Bitmap none(w, h, l);
  EXPECT_EQ(shifted_error(ma, all, ma, all, {0, 0}), 0u);
  EXPECT_EQ(shifted_error(all, all, none, all, {0, 0}), std::size_t(w * h));

  // b = a moved right by one: realigns perfectly on the overlap.
  const Bitmap mb = shift_bitmap(ma, {1, 0});
  EXPECT_EQ(shifted_error(ma, all, mb, all, {1, 0}), 0u);
  BoolGrid b(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 1; x < w; ++x) b.at(x, y) = a.at(x - 1, y);
  BoolGrid ones(w, h);
  std::fill(ones.v.begin(), ones.v.end(), 1);
  EXPECT_EQ(testing::scalar_shifted_error(a, ones, b, ones, {1, 0}), 0u);
}

TEST_P(BitmapLayout, ShiftedErrorMatchesScalarOracle) {
  const Layout l = GetParam();
  Rng rng(14);
  for (int t = 0; t < 300; ++t) {
    const int w = 1 + int(rng() % 150), h = 1 + int(rng() % 20);
    const BoolGrid a = testing::random_grid(rng, w, h), ea = testing::random_grid(rng, w, h, 0.8);
    const BoolGrid b = testing::random_grid(rng, w, h), eb = testing::random_grid(rng, w, h, 0.8);
    std::uniform_int_distribution<int> ox(-w - 2, w + 2), oy(-h - 2, h + 2);
    const ShiftOffset o{ox(rng), oy(rng)};
    const std::size_t expect = testing::scalar_shifted_error(a, ea, b, eb, o);
    const Bitmap ba = testing::to_bitmap(a, l), bea = testing::to_bitmap(ea, l);
    const Bitmap bb = testing::to_bitmap(b, l), beb = testing::to_bitmap(eb, l);
    ASSERT_EQ(shifted_error(ba, bea, bb, beb, o, 1 + int(t % 4)), expect) << w << "x" << h << " " << o.dx << "," << o.dy;
    ASSERT_EQ(shifted_error_unfused(ba, bea, bb, beb, o), expect);
  }
}

TEST_P(BitmapLayout, ZeroOffsetWithFullMasksIsXorCount) {
  const Layout l = GetParam();
  Rng rng(15);
  const BoolGrid a = testing::random_grid(rng, 77, 19), b = testing::random_grid(rng, 77, 19);
  std::size_t naive = 0;
  for (std::size_t i = 0; i < a.v.size(); ++i) naive += std::size_t(a.v[i] != b.v[i]);
  const Bitmap all = Bitmap::from_predicate(77, 19, l, [](int, int) { return true; });
  EXPECT_EQ(shifted_error(testing::to_bitmap(a, l), all, testing::to_bitmap(b, l), all, {0, 0}), naive);
}

TEST_P(BitmapLayout, SwapAndNegateSymmetry) {
  const Layout l = GetParam();
  Rng rng(16);
  for (int t = 0; t < 100; ++t) {
    const int w = 1 + int(rng() % 90), h = 1 + int(rng() % 30);
    const Bitmap a = testing::to_bitmap(testing::random_grid(rng, w, h), l);
    const Bitmap ea = testing::to_bitmap(testing::random_grid(rng, w, h, 0.7), l);
    const Bitmap b = testing::to_bitmap(testing::random_grid(rng, w, h), l);
    const Bitmap eb = testing::to_bitmap(testing::random_grid(rng, w, h, 0.7), l);
    const ShiftOffset o{int(rng() % 21) - 10, int(rng() % 21) - 10};
    ASSERT_EQ(shifted_error(a, ea, b, eb, o), shifted_error(b, eb, a, ea, -o));
  }
}

TEST_P(BitmapLayout, DimensionMismatchThrows) {
  const Layout l = GetParam();
  const Bitmap a(8, 8, l), b(8, 9, l);
  EXPECT_THROW(shifted_error(a, a, b, b, {}), std::invalid_argument);
}

INSTANTIATE_TEST_SUITE_P(Layouts, BitmapLayout, ::testing::ValuesIn(kLayouts),
                         [](const auto& info) { return std::string(info.param == Layout::ByteMap ? "ByteMap" : "WordPacked"); });

TEST(Bitmap, MixedLayoutsRejected) {
  const Bitmap a(8, 8, Layout::ByteMap), b(8, 8, Layout::WordPacked);
  EXPECT_THROW(shifted_error(a, a, b, b, {}), std::invalid_argument);
}

TEST(Bitmap, ByteMapCellsAreZeroOr255) {
  Rng rng(17);
  const Bitmap b = testing::to_bitmap(testing::random_grid(rng, 33, 5), Layout::ByteMap);
  for (int y = 0; y < 5; ++y)
    for (std::uint8_t v : b.byte_row(y)) ASSERT_TRUE(v == 0 || v == 255);
}

TEST(Bitmap, PackedPaddingStaysZero) {
  // Widths covering every residue mod 64.
  for (int w = 1; w <= 129; ++w) {
    const Bitmap b = Bitmap::from_predicate(w, 3, Layout::WordPacked, [](int, int) { return true; });
    for (int y = 0; y < 3; ++y) ASSERT_EQ(b.word_row(y).back() & ~b.tail_mask(), 0u) << w;
    ASSERT_EQ(count_ones(b), std::size_t(3 * w));
  }
}

TEST(Bitmap, BackendEquivalenceOverSizes) {
  Rng rng(18);
  for (int t = 0; t < 200; ++t) {
    const int w = 1 + int(rng() % 129), h = 1 + int(rng() % 129);
    const BoolGrid a = testing::random_grid(rng, w, h), ea = testing::random_grid(rng, w, h, 0.6);
    const BoolGrid b = testing::random_grid(rng, w, h), eb = testing::random_grid(rng, w, h, 0.6);
    const ShiftOffset o{int(rng() % 31) - 15, int(rng() % 31) - 15};
    auto err = [&](Layout l) {
      return shifted_error(testing::to_bitmap(a, l), testing::to_bitmap(ea, l), testing::to_bitmap(b, l),
                           testing::to_bitmap(eb, l), o);
    };
    ASSERT_EQ(err(Layout::ByteMap), err(Layout::WordPacked));
    ASSERT_EQ(count_ones(testing::to_bitmap(a, Layout::ByteMap)), count_ones(testing::to_bitmap(a, Layout::WordPacked)));
    ASSERT_TRUE(testing::to_bitmap(a, Layout::ByteMap) == testing::to_bitmap(a, Layout::WordPacked));
  }
}

TEST(Bitmap, ResultIndependentOfWorkerCount) {
  Rng rng(19);
  const int w = 700, h = 300;
  for (Layout l : kLayouts) {
    const Bitmap a = testing::to_bitmap(testing::random_grid(rng, w, h), l);
    const Bitmap b = testing::to_bitmap(testing::random_grid(rng, w, h), l);
    const Bitmap e = testing::to_bitmap(testing::random_grid(rng, w, h, 0.9), l);
    const auto one = shifted_error(a, e, b, e, {-3, 5}, 1);
    for (int workers : {2, 3, 8}) ASSERT_EQ(shifted_error(a, e, b, e, {-3, 5}, workers), one);
  }
}

}  // namespace
}  // namespace mtb
