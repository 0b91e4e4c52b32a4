#include "mtbalign_cli/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "mtbalign/pipeline.hpp"
#include "mtbalign_cli/errors.hpp"
#include "mtbalign_cli/image_io.hpp"

namespace mtb::cli {

namespace fs = std::filesystem;

std::array<std::uint8_t, 256> exposure_curve(Exposure e) {
  std::array<std::uint8_t, 256> lut{};
  for (int v = 0; v < 256; ++v) {
    const double out = std::round(255.0 * std::pow(e.gain * (v / 255.0), 1.0 / e.gamma));
    lut[std::size_t(v)] = std::uint8_t(std::clamp(out, 0.0, 255.0));
  }
  return lut;
}

RgbImage apply_exposure(const RgbImage& img, Exposure e) {
  const auto lut = exposure_curve(e);
  RgbImage out = img;
  for (auto& v : out.data()) v = lut[v];
  return out;
}

std::vector<ShiftOffset> SyntheticSpec::cumulative() const { return cumulative_offsets(shifts); }

double overlap_fraction(int width, int height, ShiftOffset o) {
  const double w = std::max(0, width - std::abs(o.dx));
  const double h = std::max(0, height - std::abs(o.dy));
  return (w * h) / (double(width) * double(height));
}

namespace {

bool overlap_ok(const std::vector<ShiftOffset>& cumulative, int width, int height) {
  return std::all_of(cumulative.begin(), cumulative.end(),
                     [&](ShiftOffset c) { return overlap_fraction(width, height, c) >= min_overlap; });
}

}  // namespace

SyntheticSpec random_spec(std::uint64_t seed, std::size_t count, int max_shift, int width, int height) {
  if (count < 2) throw UsageError("synthetic stack needs at least 2 frames");
  if (max_shift < 0) throw UsageError("max shift must be non-negative");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> shift(-max_shift, max_shift);
  std::uniform_real_distribution<double> gain(0.5, 2.0);
  std::uniform_real_distribution<double> gamma(0.7, 1.4);

  SyntheticSpec spec;
  spec.seed = seed;
  for (std::size_t i = 0; i < count; ++i) spec.exposures.push_back({gain(rng), gamma(rng)});
  for (int attempt = 0; attempt < 1000; ++attempt) {
    spec.shifts.clear();
    for (std::size_t i = 0; i + 1 < count; ++i) spec.shifts.push_back({shift(rng), shift(rng)});
    if (overlap_ok(spec.cumulative(), width, height)) return spec;
  }
  throw UsageError("could not draw shifts keeping 75% overlap; lower --max-shift or --count");
}

std::vector<RgbImage> generate_stack(const RgbImage& base, const SyntheticSpec& spec) {
  if (spec.exposures.size() != spec.count()) throw UsageError("need one exposure per frame");
  const auto cumulative = spec.cumulative();
  for (std::size_t i = 0; i < cumulative.size(); ++i) {
    if (overlap_fraction(base.width(), base.height(), cumulative[i]) < min_overlap)
      throw UsageError("frame " + std::to_string(i) + " displaced by (" + std::to_string(cumulative[i].dx) + "," +
                       std::to_string(cumulative[i].dy) + ") keeps less than 75% overlap with the base");
  }
  std::vector<RgbImage> frames;
  for (std::size_t i = 0; i < cumulative.size(); ++i)
    frames.push_back(shift_rgb(apply_exposure(base, spec.exposures[i]), cumulative[i]));
  return frames;
}

nlohmann::json manifest_json(const fs::path& base, const std::vector<fs::path>& frames, const SyntheticSpec& spec) {
  using nlohmann::json;
  json j;
  j["base"] = base.string();
  j["count"] = spec.count();
  if (spec.seed) j["seed"] = *spec.seed;
  j["images"] = json::array();
  for (const auto& f : frames) j["images"].push_back(f.string());
  j["pairwise"] = json::array();
  for (const auto& s : spec.shifts) j["pairwise"].push_back({s.dx, s.dy});
  j["cumulative"] = json::array();
  for (const auto& c : spec.cumulative()) j["cumulative"].push_back({c.dx, c.dy});
  j["exposures"] = json::array();
  for (const auto& e : spec.exposures) j["exposures"].push_back({{"gain", e.gain}, {"gamma", e.gamma}});
  return j;
}

nlohmann::json run_generate(const fs::path& base_path, const SyntheticSpec& spec, const fs::path& out_dir) {
  const RgbImage base = decode_image(base_path);
  if (base.width() < 64 || base.height() < 64) throw UsageError("base image must be at least 64x64");
  const auto frames = generate_stack(base, spec);

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError(out_dir.string() + ": cannot create directory: " + ec.message());
  std::vector<fs::path> written;
  try {
    for (std::size_t i = 0; i < frames.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "frame_%02zu.ppm", i);
      written.push_back(out_dir / name);
      encode_image(frames[i], written.back());
    }
    auto manifest = manifest_json(base_path, written, spec);
    const fs::path mpath = out_dir / "manifest.json";
    std::ofstream out(mpath, std::ios::trunc);
    out << manifest.dump(2) << '\n';
    if (!out) throw IoError(mpath.string() + ": write failed");
    return manifest;
  } catch (...) {
    for (const auto& p : written) fs::remove(p, ec);
    throw;
  }
}

}  // namespace mtb::cli
