#pragma once

#include <array>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "mtbalign/bitmap.hpp"
#include "mtbalign/core_image.hpp"
#include "mtbalign/parallel.hpp"
#include "mtbalign/threshold.hpp"

namespace mtb {

// Offsets returned by the search describe where the target's content sits
// relative to the reference: an offset o means tgt(x + o) ~ ref(x), so
// shifting the target by -o registers it onto the reference.

struct Candidate {
  ShiftOffset offset;
  std::size_t error = 0;
  friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// The nine +-1 candidates around `base`, row-major over (ddy, ddx).
inline std::array<ShiftOffset, 9> candidate_offsets(ShiftOffset base) {
  std::array<ShiftOffset, 9> out{};
  std::size_t i = 0;
  for (int ddy = -1; ddy <= 1; ++ddy)
    for (int ddx = -1; ddx <= 1; ++ddx) out[i++] = base + ShiftOffset{ddx, ddy};
  return out;
}

/// Strict ordering used to pick a winner: lower error, then closer to
/// `center` in L1, then row-major (dy, dx) scan order.
inline bool better_candidate(const Candidate& a, const Candidate& b, ShiftOffset center) {
  if (a.error != b.error) return a.error < b.error;
  const auto da = a.offset - center;
  const auto db = b.offset - center;
  const int la = std::abs(da.dx) + std::abs(da.dy);
  const int lb = std::abs(db.dx) + std::abs(db.dy);
  if (la != lb) return la < lb;
  if (da.dy != db.dy) return da.dy < db.dy;
  return da.dx < db.dx;
}

struct LevelTrace {
  int level = 0;
  std::array<Candidate, 9> candidates{};
  ShiftOffset chosen;       // winning candidate, in this level's pixels
  ShiftOffset accumulated;  // running offset after this level (same scale)
  friend bool operator==(const LevelTrace&, const LevelTrace&) = default;
};

struct AlignmentResult {
  ShiftOffset offset;
  std::vector<LevelTrace> traces;  // deepest level first
  std::size_t total_tests = 0;
  friend bool operator==(const AlignmentResult&, const AlignmentResult&) = default;
};

namespace detail {

inline void require_same_level(const MtbPair& a, const MtbPair& b) {
  if (a.width() != b.width() || a.height() != b.height())
    throw std::invalid_argument("search: MTB pair dimensions differ");
  if (a.mtb.layout() != b.mtb.layout()) throw std::invalid_argument("search: MTB pair layouts differ");
}

}  // namespace detail

struct LevelSearch {
  ShiftOffset chosen;
  std::array<Candidate, 9> candidates{};
  std::size_t tests = 0;  // shifted_error evaluations performed
};

/// Scores the nine offsets base + {-1,0,1}^2 and keeps the best.
/// Candidates are evaluated concurrently when workers > 1; the outcome does
/// not depend on evaluation order.
inline LevelSearch search_level(const MtbPair& ref, const MtbPair& tgt, ShiftOffset base, int workers = 1) {
  detail::require_same_level(ref, tgt);
  LevelSearch out;
  const auto offsets = candidate_offsets(base);
  const int outer = std::min(std::max(1, workers), 9);
  const int inner = std::max(1, workers / outer);
  std::array<std::size_t, 9> errors{};
  std::atomic<std::size_t> evaluations{0};
  for_each_band(offsets.size(), outer, 1, [&](std::size_t i0, std::size_t i1) {
    for (std::size_t i = i0; i < i1; ++i) {
      errors[i] = shifted_error(ref.mtb, ref.exclusion, tgt.mtb, tgt.exclusion, offsets[i], inner);
      evaluations.fetch_add(1, std::memory_order_relaxed);
    }
  });
  for (std::size_t i = 0; i < offsets.size(); ++i) out.candidates[i] = {offsets[i], errors[i]};
  out.tests = evaluations.load();
  Candidate best = out.candidates[0];
  for (const auto& c : out.candidates)
    if (better_candidate(c, best, base)) best = c;
  out.chosen = best.offset;
  return out;
}

/// Coarse-to-fine search. Starting at the deepest level from (0,0), the
/// running offset is doubled on each step to the next finer level and refined
/// by +-1 per axis: 9 tests per level.
inline AlignmentResult find_offset(const MtbPyramid& ref, const MtbPyramid& tgt, int workers = 1) {
  if (ref.size() != tgt.size() || ref.empty()) throw std::invalid_argument("find_offset: pyramid level counts differ");
  for (std::size_t i = 0; i < ref.size(); ++i) detail::require_same_level(ref[i], tgt[i]);

  AlignmentResult result;
  ShiftOffset running{};
  for (std::size_t k = ref.size(); k-- > 0;) {
    const ShiftOffset base = running * 2;
    const LevelSearch s = search_level(ref[k], tgt[k], base, workers);
    running = s.chosen;
    result.traces.push_back({int(k), s.candidates, s.chosen, running});
    result.total_tests += s.tests;
  }
  result.offset = running;
  return result;
}

struct BruteForceResult {
  ShiftOffset offset;
  std::size_t error = 0;
  std::size_t evaluations = 0;
};

/// Exhaustive search over every offset with |dx|, |dy| <= max_radius, using
/// the same winner rule as the pyramid search centered at (0,0).
inline BruteForceResult brute_force_offset(const MtbPair& ref, const MtbPair& tgt, int max_radius, int workers = 1) {
  if (max_radius < 0) throw std::invalid_argument("brute_force_offset: negative radius");
  detail::require_same_level(ref, tgt);
  const int side = 2 * max_radius + 1;
  std::vector<Candidate> all(std::size_t(side) * std::size_t(side));
  for_each_band(all.size(), workers, 1, [&](std::size_t i0, std::size_t i1) {
    for (std::size_t i = i0; i < i1; ++i) {
      const ShiftOffset o{int(i % std::size_t(side)) - max_radius, int(i / std::size_t(side)) - max_radius};
      all[i] = {o, shifted_error(ref.mtb, ref.exclusion, tgt.mtb, tgt.exclusion, o)};
    }
  });
  Candidate best = all.front();
  for (const auto& c : all)
    if (better_candidate(c, best, {})) best = c;
  return {best.offset, best.error, all.size()};
}

/// Fraction of reliable (exclusion = 1) pixels in a pair.
inline double reliable_fraction(const MtbPair& p) {
  return double(count_ones(p.exclusion)) / (double(p.width()) * double(p.height()));
}

}  // namespace mtb
