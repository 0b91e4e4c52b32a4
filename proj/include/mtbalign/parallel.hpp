#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace mtb {

/// Number of logical CPUs, at least 1.
inline int hardware_workers() {
  return std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
}

/// Rows per band so that each band touches roughly 64K pixels.
inline std::size_t rows_per_grain(int width) {
  return std::max<std::size_t>(1, (std::size_t(1) << 16) / std::max<std::size_t>(1, std::size_t(width)));
}

/// How many bands for_each_band uses for the given arguments.
inline std::size_t band_count(std::size_t count, int workers, std::size_t min_grain) {
  if (count == 0) return 0;
  min_grain = std::max<std::size_t>(1, min_grain);
  const std::size_t max_bands = (count + min_grain - 1) / min_grain;
  return std::clamp<std::size_t>(std::size_t(std::max(1, workers)), 1, max_bands);
}

/// Splits [0, count) into at most `workers` contiguous bands of roughly
/// `min_grain` items or more and calls fn(band, begin, end) for each, band 0
/// on the calling thread. Blocks until every band is done and rethrows the
/// first band's exception, if any.
template <class Fn>
void for_each_band_indexed(std::size_t count, int workers, std::size_t min_grain, Fn&& fn) {
  const std::size_t bands = band_count(count, workers, min_grain);
  if (bands == 0) return;
  if (bands == 1) {
    fn(std::size_t(0), std::size_t(0), count);
    return;
  }
  std::vector<std::exception_ptr> errors(bands);
  auto run = [&](std::size_t band) {
    try {
      fn(band, count * band / bands, count * (band + 1) / bands);
    } catch (...) {
      errors[band] = std::current_exception();
    }
  };
  {
    std::vector<std::jthread> threads;
    threads.reserve(bands - 1);
    for (std::size_t b = 1; b < bands; ++b) threads.emplace_back(run, b);
    run(0);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

template <class Fn>
void for_each_band(std::size_t count, int workers, std::size_t min_grain, Fn&& fn) {
  for_each_band_indexed(count, workers, min_grain,
                        [&](std::size_t, std::size_t begin, std::size_t end) { fn(begin, end); });
}

/// Sums fn(begin, end) over bands, combining partial results in band order.
template <class T, class Fn>
T reduce_bands(std::size_t count, int workers, std::size_t min_grain, Fn&& fn) {
  std::vector<T> partial(std::max<std::size_t>(1, band_count(count, workers, min_grain)), T{});
  for_each_band_indexed(count, workers, min_grain, [&](std::size_t band, std::size_t begin, std::size_t end) {
    partial[band] = fn(begin, end);
  });
  T total{};
  for (const auto& p : partial) total += p;
  return total;
}

}  // namespace mtb
