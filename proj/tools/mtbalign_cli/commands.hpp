#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mtbalign/pipeline.hpp"
#include "mtbalign_cli/synthetic.hpp"

namespace mtb::cli {

struct CliConfig {
  std::vector<std::filesystem::path> inputs;
  std::filesystem::path output_dir;
  int levels = default_levels;
  int noise_tolerance = default_noise_tolerance;
  Layout layout = Layout::WordPacked;
  int workers = hardware_workers();
  int repetitions = 1;
  std::optional<std::filesystem::path> report_path;

  AlignConfig align_config() const { return {levels, noise_tolerance, layout, workers}; }
};

/// Throws UsageError unless 2 <= inputs <= 64, levels in [1, 10],
/// noise_tolerance in [0, 127], workers >= 1 and repetitions >= 1.
void validate(const CliConfig& c);

/// Aligns the inputs, writes <output_dir>/<stem>_aligned.<ext> per input and
/// the optional JSON report, and prints one "dx dy" line per input. Files
/// written before a failure are removed. Returns an exit code.
int run_align(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Times the stack for 2..N inputs and prints a CSV or JSON table.
int run_bench(const CliConfig& config, const std::string& format, std::ostream& out, std::ostream& err);

/// Parses "dx,dy;dx,dy;..." (whitespace ignored).
std::vector<ShiftOffset> parse_shifts(const std::string& text);
/// Parses "gain,gamma;gain,gamma;...".
std::vector<Exposure> parse_exposures(const std::string& text);

/// Full command line entry point (argv[0] is the program name).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mtb::cli
