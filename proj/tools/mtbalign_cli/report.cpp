#include "mtbalign_cli/report.hpp"

namespace mtb::cli {

json offset_json(ShiftOffset o) { return json::array({o.dx, o.dy}); }

json trace_json(const LevelTrace& t) {
  json candidates = json::array();
  for (const auto& c : t.candidates) candidates.push_back(json::array({c.offset.dx, c.offset.dy, c.error}));
  return {{"level", t.level},
          {"candidates", std::move(candidates)},
          {"chosen", offset_json(t.chosen)},
          {"accumulated", offset_json(t.accumulated)}};
}

json pairwise_json(const AlignmentResult& r) {
  json traces = json::array();
  for (const auto& t : r.traces) traces.push_back(trace_json(t));
  return {{"dx", r.offset.dx}, {"dy", r.offset.dy}, {"total_tests", r.total_tests}, {"traces", std::move(traces)}};
}

json make_report(const std::vector<std::filesystem::path>& images, const AlignConfig& config,
                 const StackAlignment& alignment) {
  json j;
  j["images"] = json::array();
  for (const auto& p : images) j["images"].push_back(p.string());
  j["config"] = {{"levels", config.levels},
                 {"levels_used", alignment.levels_used},
                 {"noise_tolerance", config.noise_tolerance},
                 {"layout", std::string(layout_name(config.layout))},
                 {"workers", config.workers}};
  j["fill"] = json::array({0, 0, 0});
  j["pairwise"] = json::array();
  for (const auto& r : alignment.pairwise) j["pairwise"].push_back(pairwise_json(r));
  j["cumulative"] = json::array();
  for (const auto& c : alignment.cumulative) j["cumulative"].push_back(offset_json(c));
  json t;
  for (std::size_t s = 0; s < stage_count; ++s) t[std::string(stage_names[s])] = alignment.timings.stage_ms[s];
  t["total"] = alignment.timings.total_ms;
  j["timings_ms"] = std::move(t);
  return j;
}

namespace {

bool is_pair(const json& v) {
  return v.is_array() && v.size() == 2 && v[0].is_number_integer() && v[1].is_number_integer();
}

}  // namespace

std::vector<std::string> validate_report(const json& r) {
  std::vector<std::string> errs;
  auto need = [&](bool ok, const std::string& what) {
    if (!ok) errs.push_back(what);
    return ok;
  };
  if (!need(r.is_object(), "report is not an object")) return errs;

  std::size_t n = 0;
  if (need(r.contains("images") && r["images"].is_array(), "images: missing or not an array")) {
    n = r["images"].size();
    need(n >= 2, "images: fewer than 2 entries");
    for (const auto& p : r["images"]) need(p.is_string(), "images: entry is not a string");
  }

  if (need(r.contains("config") && r["config"].is_object(), "config: missing or not an object")) {
    const auto& c = r["config"];
    for (const char* k : {"levels", "levels_used", "noise_tolerance", "workers"})
      need(c.contains(k) && c[k].is_number_integer(), std::string("config.") + k + ": missing or not an integer");
    need(c.contains("layout") && c["layout"].is_string() &&
             (c["layout"] == "bytemap" || c["layout"] == "packed"),
         "config.layout: must be \"bytemap\" or \"packed\"");
  }

  need(r.contains("fill") && r["fill"].is_array() && r["fill"].size() == 3, "fill: must be an RGB triple");

  int levels_used = 0;
  if (r.contains("config") && r["config"].is_object() && r["config"].contains("levels_used") &&
      r["config"]["levels_used"].is_number_integer())
    levels_used = r["config"]["levels_used"].get<int>();

  if (need(r.contains("pairwise") && r["pairwise"].is_array(), "pairwise: missing or not an array")) {
    need(r["pairwise"].size() + 1 == n, "pairwise: expected one entry per consecutive image pair");
    for (const auto& p : r["pairwise"]) {
      if (!need(p.is_object(), "pairwise: entry is not an object")) continue;
      need(p.contains("dx") && p["dx"].is_number_integer() && p.contains("dy") && p["dy"].is_number_integer(),
           "pairwise: dx/dy missing or not integers");
      if (!need(p.contains("traces") && p["traces"].is_array(), "pairwise.traces: missing or not an array")) continue;
      need(int(p["traces"].size()) == levels_used, "pairwise.traces: one trace per pyramid level expected");
      need(p.contains("total_tests") && p["total_tests"].is_number_integer() &&
               p["total_tests"].get<std::size_t>() == 9 * p["traces"].size(),
           "pairwise.total_tests: must equal 9 per level");
      for (const auto& t : p["traces"]) {
        if (!need(t.is_object(), "trace: not an object")) continue;
        need(t.contains("level") && t["level"].is_number_integer(), "trace.level: missing or not an integer");
        need(t.contains("chosen") && is_pair(t["chosen"]), "trace.chosen: must be [dx, dy]");
        need(t.contains("accumulated") && is_pair(t["accumulated"]), "trace.accumulated: must be [dx, dy]");
        if (!need(t.contains("candidates") && t["candidates"].is_array() && t["candidates"].size() == 9,
                  "trace.candidates: must hold 9 entries"))
          continue;
        for (const auto& c : t["candidates"])
          need(c.is_array() && c.size() == 3 && c[0].is_number_integer() && c[1].is_number_integer() &&
                   c[2].is_number_unsigned(),
               "trace.candidates: entry must be [dx, dy, error]");
      }
    }
  }

  if (need(r.contains("cumulative") && r["cumulative"].is_array(), "cumulative: missing or not an array")) {
    need(r["cumulative"].size() == n, "cumulative: one entry per image expected");
    for (const auto& c : r["cumulative"]) need(is_pair(c), "cumulative: entry must be [dx, dy]");
    if (!r["cumulative"].empty() && is_pair(r["cumulative"][0]))
      need(r["cumulative"][0] == json::array({0, 0}), "cumulative: first entry must be [0, 0]");
  }

  if (need(r.contains("timings_ms") && r["timings_ms"].is_object(), "timings_ms: missing or not an object")) {
    for (const char* k : {"grayscale", "pyramid", "threshold", "search", "shift", "total"})
      need(r["timings_ms"].contains(k) && r["timings_ms"][k].is_number() && r["timings_ms"][k].get<double>() >= 0,
           std::string("timings_ms.") + k + ": missing or negative");
  }
  return errs;
}

}  // namespace mtb::cli
