#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include <json.hpp>

#include "mtbalign/core_image.hpp"

namespace mtb::cli {

/// Simulated exposure: out = clamp(round(255 * (gain * in/255)^(1/gamma))).
struct Exposure {
  double gain = 1.0;
  double gamma = 1.0;
};

std::array<std::uint8_t, 256> exposure_curve(Exposure e);
RgbImage apply_exposure(const RgbImage& img, Exposure e);

/// Ground truth for a synthetic stack of `shifts.size() + 1` frames. Each
/// shift is the displacement of frame i+1 relative to frame i.
struct SyntheticSpec {
  std::vector<ShiftOffset> shifts;
  std::vector<Exposure> exposures;  // one per frame
  std::optional<std::uint64_t> seed;

  std::size_t count() const { return shifts.size() + 1; }
  std::vector<ShiftOffset> cumulative() const;
};

/// Fraction of the frame still covered after displacing by `o`.
double overlap_fraction(int width, int height, ShiftOffset o);
inline constexpr double min_overlap = 0.75;

/// Random shifts in [-max_shift, max_shift]^2, gains in [0.5, 2.0], gammas in
/// [0.7, 1.4]. Shift draws are repeated until every frame keeps the minimum
/// overlap with frame 0.
SyntheticSpec random_spec(std::uint64_t seed, std::size_t count, int max_shift, int width, int height);

/// Frame i = exposure_i(base) shifted by cumulative[i], black fill. Throws
/// UsageError if a frame would keep less than min_overlap of the base.
std::vector<RgbImage> generate_stack(const RgbImage& base, const SyntheticSpec& spec);

nlohmann::json manifest_json(const std::filesystem::path& base, const std::vector<std::filesystem::path>& frames,
                             const SyntheticSpec& spec);

/// Writes frame_NN.ppm files and manifest.json into out_dir; returns the manifest.
nlohmann::json run_generate(const std::filesystem::path& base_path, const SyntheticSpec& spec,
                            const std::filesystem::path& out_dir);

}  // namespace mtb::cli
