#pragma once

#include <array>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "mtbalign/bitmap.hpp"
#include "mtbalign/core_image.hpp"
#include "mtbalign/parallel.hpp"
#include "mtbalign/pyramid.hpp"
#include "mtbalign/search.hpp"
#include "mtbalign/threshold.hpp"

namespace mtb {

struct AlignConfig {
  int levels = default_levels;
  int noise_tolerance = default_noise_tolerance;
  Layout layout = Layout::WordPacked;
  int workers = hardware_workers();
};

enum class Stage : std::size_t { Grayscale, Pyramid, Threshold, Search, Shift };
inline constexpr std::size_t stage_count = 5;
inline constexpr std::array<std::string_view, stage_count> stage_names = {"grayscale", "pyramid", "threshold",
                                                                          "search", "shift"};

/// Wall-clock milliseconds per stage plus the whole call.
struct StageTimings {
  std::array<double, stage_count> stage_ms{};
  double total_ms = 0;

  double operator[](Stage s) const { return stage_ms[std::size_t(s)]; }
  double stage_sum() const {
    double s = 0;
    for (double v : stage_ms) s += v;
    return s;
  }
};

/// Work counters; used to check that per-image work happens once per image.
struct PipelineCounters {
  std::size_t grayscale_conversions = 0;
  std::size_t pyramid_builds = 0;
  std::size_t mtb_pyramid_builds = 0;
  std::size_t find_offset_calls = 0;
  std::size_t shift_tests = 0;
};

struct StackAlignment {
  std::size_t image_count = 0;
  int levels_used = 0;
  std::vector<AlignmentResult> pairwise;  // entry i: image i+1 against image i
  std::vector<ShiftOffset> cumulative;    // displacement of image i relative to image 0
  StageTimings timings;
  PipelineCounters counters;
};

struct AlignedStack {
  std::vector<RgbImage> images;
  StackAlignment alignment;
};

/// Running sums of pairwise offsets, starting from (0,0).
inline std::vector<ShiftOffset> cumulative_offsets(const std::vector<ShiftOffset>& pairwise) {
  std::vector<ShiftOffset> out{ShiftOffset{}};
  for (const auto& p : pairwise) out.push_back(out.back() + p);
  return out;
}

inline void validate_stack(const std::vector<RgbImage>& images) {
  if (images.size() < 2) throw std::invalid_argument("align_stack: need at least 2 images");
  for (const auto& img : images) {
    if (img.width() != images.front().width() || img.height() != images.front().height())
      throw std::invalid_argument("align_stack: images differ in size");
  }
  if (images.front().width() < min_level_size || images.front().height() < min_level_size)
    throw std::invalid_argument("align_stack: images smaller than 16x16");
}

inline void validate_config(const AlignConfig& c) {
  if (c.levels < 1) throw std::invalid_argument("align_stack: levels must be positive");
  if (c.noise_tolerance < 0 || c.noise_tolerance > 255)
    throw std::invalid_argument("align_stack: noise tolerance out of range");
  if (c.workers < 1) throw std::invalid_argument("align_stack: worker count must be positive");
}

/// Registers every image of a bracketed stack onto image 0.
///
/// Grayscale, pyramid and MTB construction run once per image, concurrently
/// across images. Consecutive pairs (i, i+1) are then searched in chain order
/// and the pairwise displacements summed. Image i is returned shifted by
/// -cumulative[i] with black fill, so image 0 comes back unchanged.
inline AlignedStack align_stack(const std::vector<RgbImage>& images, const AlignConfig& config) {
  using clock = std::chrono::steady_clock;
  const auto t_start = clock::now();
  validate_stack(images);
  validate_config(config);

  const std::size_t n = images.size();
  const int outer = std::min<int>(config.workers, int(n));
  const int inner = std::max(1, config.workers / outer);
  const auto tol = std::uint8_t(config.noise_tolerance);

  AlignedStack out;
  StackAlignment& a = out.alignment;
  a.image_count = n;

  auto timed = [&](Stage s, auto&& body) {
    const auto t0 = clock::now();
    body();
    a.timings.stage_ms[std::size_t(s)] = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
  };
  auto per_image = [&](auto&& body) {
    for_each_band(n, outer, 1, [&](std::size_t i0, std::size_t i1) {
      for (std::size_t i = i0; i < i1; ++i) body(i);
    });
  };

  std::vector<GrayImage> gray(n);
  timed(Stage::Grayscale, [&] { per_image([&](std::size_t i) { gray[i] = to_grayscale(images[i], inner); }); });
  a.counters.grayscale_conversions = n;

  std::vector<GrayPyramid> pyramids(n);
  timed(Stage::Pyramid, [&] {
    per_image([&](std::size_t i) { pyramids[i] = build_pyramid(std::move(gray[i]), config.levels, inner); });
  });
  a.counters.pyramid_builds = n;
  a.levels_used = pyramids.front().level_count();

  std::vector<MtbPyramid> mtbs(n);
  timed(Stage::Threshold, [&] {
    per_image([&](std::size_t i) { mtbs[i] = build_mtb_pyramid(pyramids[i], tol, config.layout, inner); });
  });
  a.counters.mtb_pyramid_builds = n;

  timed(Stage::Search, [&] {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      a.pairwise.push_back(find_offset(mtbs[i], mtbs[i + 1], config.workers));
      ++a.counters.find_offset_calls;
      a.counters.shift_tests += a.pairwise.back().total_tests;
    }
  });
  std::vector<ShiftOffset> steps;
  for (const auto& p : a.pairwise) steps.push_back(p.offset);
  a.cumulative = cumulative_offsets(steps);

  out.images.resize(n);
  timed(Stage::Shift, [&] {
    out.images[0] = images[0];
    for_each_band(n - 1, outer, 1, [&](std::size_t i0, std::size_t i1) {
      for (std::size_t i = i0 + 1; i < i1 + 1; ++i)
        out.images[i] = shift_rgb(images[i], -a.cumulative[i], Rgb{0, 0, 0}, inner);
    });
  });

  a.timings.total_ms = std::chrono::duration<double, std::milli>(clock::now() - t_start).count();
  return out;
}

struct SampleStats {
  double mean = 0;
  double stddev = 0;  // sample standard deviation; 0 for a single sample
};

inline SampleStats sample_stats(const std::vector<double>& xs) {
  SampleStats s;
  if (xs.empty()) return s;
  for (double x : xs) s.mean += x;
  s.mean /= double(xs.size());
  if (xs.size() > 1) {
    double ss = 0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(ss / double(xs.size() - 1));
  }
  return s;
}

struct TimingReport {
  std::size_t image_count = 0;
  int repetitions = 0;
  std::array<SampleStats, stage_count> stages{};
  SampleStats total;
  std::vector<StageTimings> runs;
};

/// Runs align_stack `repetitions` times on in-memory images and summarizes
/// the per-stage and total wall times.
inline TimingReport measure_alignment(const std::vector<RgbImage>& images, const AlignConfig& config,
                                      int repetitions = 10) {
  if (repetitions < 1) throw std::invalid_argument("measure_alignment: repetitions must be positive");
  TimingReport r;
  r.image_count = images.size();
  r.repetitions = repetitions;
  for (int i = 0; i < repetitions; ++i) r.runs.push_back(align_stack(images, config).alignment.timings);
  for (std::size_t s = 0; s < stage_count; ++s) {
    std::vector<double> xs;
    for (const auto& t : r.runs) xs.push_back(t.stage_ms[s]);
    r.stages[s] = sample_stats(xs);
  }
  std::vector<double> totals;
  for (const auto& t : r.runs) totals.push_back(t.total_ms);
  r.total = sample_stats(totals);
  return r;
}

}  // namespace mtb
