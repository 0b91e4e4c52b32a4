#include <gtest/gtest.h>

#include <numeric>

#include "mtbalign/pyramid.hpp"
#include "test_support.hpp"

namespace mtb {
namespace {

using testing::Rng;

double mean(const GrayImage& g) {
  return std::accumulate(g.data().begin(), g.data().end(), 0.0) / double(g.pixel_count());
}

TEST(Downsample, ConstantImageStaysConstant) {
  const GrayImage img(10, 6, 77);
  EXPECT_EQ(downsample_half(img), GrayImage(5, 3, 77));
}

TEST(Downsample, RoundsHalfUp) {
  // (0 + 0 + 255 + 255 + 2) / 4 = 128
  EXPECT_EQ(downsample_half(GrayImage(2, 2, {0, 0, 255, 255})).at(0, 0), 128);
  EXPECT_EQ(downsample_half(GrayImage(2, 2, {0, 0, 0, 2})).at(0, 0), 1);
  EXPECT_EQ(downsample_half(GrayImage(2, 2, {0, 0, 0, 1})).at(0, 0), 0);
}

TEST(Downsample, Dimensions) {
  const GrayImage out = downsample_half(GrayImage(640, 480));
  EXPECT_EQ(out.width(), 320);
  EXPECT_EQ(out.height(), 240);
  const GrayImage odd = downsample_half(GrayImage(5, 3));
  EXPECT_EQ(odd.width(), 2);
  EXPECT_EQ(odd.height(), 1);
  EXPECT_THROW(downsample_half(GrayImage(1, 4)), std::invalid_argument);
}

TEST(Downsample, MatchesScalarBlockAverage) {
  Rng rng(21);
  const GrayImage img = testing::random_gray(rng, 131, 77);
  const GrayImage out = downsample_half(img, 3);
  for (int y = 0; y < out.height(); ++y)
    for (int x = 0; x < out.width(); ++x) {
      const int s = img.at(2 * x, 2 * y) + img.at(2 * x + 1, 2 * y) + img.at(2 * x, 2 * y + 1) + img.at(2 * x + 1, 2 * y + 1);
      ASSERT_EQ(out.at(x, y), int(std::floor(s / 4.0 + 0.5)));
    }
}

TEST(Downsample, MeanPreservedForEvenInputs) {
  Rng rng(22);
  for (int t = 0; t < 50; ++t) {
    const GrayImage img = testing::random_gray(rng, 2 * (1 + int(rng() % 40)), 2 * (1 + int(rng() % 40)));
    EXPECT_LE(std::abs(mean(downsample_half(img)) - mean(img)), 1.0);
  }
}

TEST(Pyramid, LevelClamping) {
  EXPECT_EQ(clamp_levels(2560, 1440, 6), 6);
  EXPECT_EQ(clamp_levels(64, 64, 6), 3);
  EXPECT_EQ(clamp_levels(16, 16, 6), 1);
  EXPECT_EQ(clamp_levels(33, 1000, 10), 2);
  EXPECT_THROW(clamp_levels(64, 64, 0), std::invalid_argument);
}

TEST(Pyramid, LargeInputKeepsSixLevels) {
  const GrayPyramid p = build_pyramid(GrayImage(2560, 1440, 5), 6, 4);
  ASSERT_EQ(p.level_count(), 6);
  EXPECT_EQ(p.levels.back().width(), 80);
  EXPECT_EQ(p.levels.back().height(), 45);
}

TEST(Pyramid, StructureAndDeterminism) {
  Rng rng(23);
  const GrayImage img = testing::random_gray(rng, 203, 150);
  const GrayPyramid p = build_pyramid(img, 6, 1);
  ASSERT_EQ(p.level_count(), 4);  // 203x150 -> 101x75 -> 50x37 -> 25x18
  EXPECT_EQ(p[0], img);
  for (int i = 1; i < p.level_count(); ++i) {
    EXPECT_EQ(p.levels[std::size_t(i)].width(), p.levels[std::size_t(i - 1)].width() / 2);
    EXPECT_EQ(p.levels[std::size_t(i)].height(), p.levels[std::size_t(i - 1)].height() / 2);
    EXPECT_GE(p.levels[std::size_t(i)].height(), min_level_size);
  }
  const GrayPyramid q = build_pyramid(img, 6, 8);
  EXPECT_EQ(p.levels, q.levels);
}

TEST(Pyramid, SingleLevelIsInput) {
  Rng rng(24);
  const GrayImage img = testing::random_gray(rng, 40, 40);
  const GrayPyramid p = build_pyramid(img, 1);
  ASSERT_EQ(p.level_count(), 1);
  EXPECT_EQ(p[0], img);
}

TEST(Pyramid, TooSmallThrows) { EXPECT_THROW(build_pyramid(GrayImage(15, 40), 3), std::invalid_argument); }

}  // namespace
}  // namespace mtb
