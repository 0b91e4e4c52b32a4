// Aligns a synthetic pair: a smooth pattern and a darker copy displaced by
// (5, -3). Prints the recovered offset and the per-level search trace.
#include <cmath>
#include <iostream>

#include "mtbalign/mtbalign.hpp"

int main() {
  const int w = 256, h = 192;
  mtb::RgbImage base(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double v = 127.5 + 60 * std::sin(x * 0.07) * std::cos(y * 0.05) + 50 * std::sin((x + 2 * y) * 0.021);
      for (int c = 0; c < 3; ++c) base.at(x, y, c) = std::uint8_t(std::lround(std::clamp(v, 0.0, 255.0)));
    }

  mtb::RgbImage darker = base;
  for (auto& v : darker.data()) v = std::uint8_t(v / 2);
  const mtb::RgbImage moved = mtb::shift_rgb(darker, {5, -3});

  mtb::AlignConfig config;
  config.levels = 4;
  const auto result = mtb::align_stack({base, moved}, config);
  const auto& pair = result.alignment.pairwise.front();
  std::cout << "offset " << mtb::to_string(pair.offset) << " after " << pair.total_tests << " shift tests\n";
  for (const auto& t : pair.traces)
    std::cout << "  level " << t.level << ": chose " << mtb::to_string(t.chosen) << '\n';
}
