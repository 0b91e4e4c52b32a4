#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include <json.hpp>

#include "mtbalign/pipeline.hpp"

namespace mtb::cli {

struct BenchRow {
  std::size_t image_count = 0;
  SampleStats total;
  std::array<double, stage_count> stage_means{};
};

struct BenchTable {
  int repetitions = 0;
  int workers = 0;
  Layout layout = Layout::WordPacked;
  int width = 0;
  int height = 0;
  std::vector<BenchRow> rows;
};

/// Times align_stack on the first k images for k = 2..images.size().
BenchTable bench_sweep(const std::vector<RgbImage>& images, const AlignConfig& config, int repetitions);

void write_csv(std::ostream& out, const BenchTable& table);
nlohmann::json bench_json(const BenchTable& table);

/// Least-squares line y = slope * x + intercept and its coefficient of
/// determination.
struct LinearFit {
  double slope = 0;
  double intercept = 0;
  double r_squared = 0;
};

LinearFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace mtb::cli
