#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "mtbalign/pipeline.hpp"

namespace mtb::cli {

using nlohmann::json;

json offset_json(ShiftOffset o);
json trace_json(const LevelTrace& t);
json pairwise_json(const AlignmentResult& r);

/// Alignment report:
///   { "images": [path...],
///     "config": {"levels", "levels_used", "noise_tolerance", "layout", "workers"},
///     "fill": [0,0,0],
///     "pairwise": [{"dx","dy","total_tests","traces":[{"level","candidates":[[dx,dy,err]x9],
///                   "chosen":[dx,dy],"accumulated":[dx,dy]}]}],
///     "cumulative": [[dx,dy]...],
///     "timings_ms": {"grayscale","pyramid","threshold","search","shift","total"} }
json make_report(const std::vector<std::filesystem::path>& images, const AlignConfig& config,
                 const StackAlignment& alignment);

/// Problems found checking `report` against the layout above; empty if valid.
std::vector<std::string> validate_report(const json& report);

}  // namespace mtb::cli
