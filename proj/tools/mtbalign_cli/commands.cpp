#include "mtbalign_cli/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "mtbalign_cli/bench.hpp"
#include "mtbalign_cli/errors.hpp"
#include "mtbalign_cli/image_io.hpp"
#include "mtbalign_cli/report.hpp"

namespace mtb::cli {

namespace fs = std::filesystem;

void validate(const CliConfig& c) {
  if (c.inputs.size() < 2) throw UsageError("need at least 2 input images");
  if (c.inputs.size() > 64) throw UsageError("at most 64 input images are supported");
  if (c.levels < 1 || c.levels > 10) throw UsageError("--levels must be in [1, 10]");
  if (c.noise_tolerance < 0 || c.noise_tolerance > 127) throw UsageError("--tol must be in [0, 127]");
  if (c.workers < 1) throw UsageError("--workers must be at least 1");
  if (c.repetitions < 1) throw UsageError("--reps must be at least 1");
}

namespace {

std::vector<RgbImage> load_all(const std::vector<fs::path>& paths) {
  std::vector<RgbImage> images;
  images.reserve(paths.size());
  for (const auto& p : paths) images.push_back(decode_image(p));
  return images;
}

fs::path aligned_name(const fs::path& input, const fs::path& dir) {
  const auto ext = is_supported_extension(input) ? input.extension().string() : std::string(".ppm");
  return dir / (input.stem().string() + "_aligned" + ext);
}

// Runs `body`, mapping exceptions to exit codes and a message on `err`.
template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

Layout parse_layout(const std::string& s) {
  if (s == "bytemap") return Layout::ByteMap;
  if (s == "packed") return Layout::WordPacked;
  throw UsageError("--layout must be bytemap or packed");
}

}  // namespace

int run_align(const CliConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(config);
    std::set<fs::path> names;
    for (const auto& p : config.inputs)
      if (!names.insert(aligned_name(p, config.output_dir)).second)
        throw UsageError("two inputs map to the same output file " + aligned_name(p, config.output_dir).string());

    const auto images = load_all(config.inputs);
    const auto result = align_stack(images, config.align_config());

    std::vector<fs::path> written;
    try {
      std::error_code ec;
      fs::create_directories(config.output_dir, ec);
      if (ec) throw IoError(config.output_dir.string() + ": cannot create directory: " + ec.message());
      for (std::size_t i = 0; i < images.size(); ++i) {
        written.push_back(aligned_name(config.inputs[i], config.output_dir));
        encode_image(result.images[i], written.back());
      }
      if (config.report_path) {
        const auto report = make_report(config.inputs, config.align_config(), result.alignment);
        if (const auto problems = validate_report(report); !problems.empty())
          throw InternalError("report failed schema check: " + problems.front());
        written.push_back(*config.report_path);
        std::ofstream f(*config.report_path, std::ios::trunc);
        f << report.dump(2) << '\n';
        if (!f) throw IoError(config.report_path->string() + ": write failed");
      }
    } catch (...) {
      std::error_code ec;
      for (const auto& p : written) fs::remove(p, ec);
      throw;
    }
    for (const auto& c : result.alignment.cumulative) out << c.dx << ' ' << c.dy << '\n';
    return int(kOk);
  });
}

int run_bench(const CliConfig& config, const std::string& format, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(config);
    if (format != "csv" && format != "json") throw UsageError("--format must be csv or json");
    const auto images = load_all(config.inputs);
    const auto table = bench_sweep(images, config.align_config(), config.repetitions);
    if (format == "csv")
      write_csv(out, table);
    else
      out << bench_json(table).dump(2) << '\n';
    return int(kOk);
  });
}

namespace {

std::vector<std::vector<std::string>> split_groups(const std::string& text) {
  std::vector<std::vector<std::string>> groups;
  std::string cleaned;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) cleaned += c;
  std::stringstream ss(cleaned);
  std::string group;
  while (std::getline(ss, group, ';')) {
    if (group.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream gs(group);
    std::string f;
    while (std::getline(gs, f, ',')) fields.push_back(f);
    groups.push_back(std::move(fields));
  }
  return groups;
}

template <class T>
T parse_number(const std::string& s, const std::string& what) {
  std::istringstream in(s);
  T v{};
  if (!(in >> v) || !in.eof()) throw UsageError("cannot parse '" + s + "' in " + what);
  return v;
}

}  // namespace

std::vector<ShiftOffset> parse_shifts(const std::string& text) {
  std::vector<ShiftOffset> out;
  for (const auto& g : split_groups(text)) {
    if (g.size() != 2) throw UsageError("--shifts expects \"dx,dy;dx,dy;...\"");
    out.push_back({parse_number<int>(g[0], "--shifts"), parse_number<int>(g[1], "--shifts")});
  }
  return out;
}

std::vector<Exposure> parse_exposures(const std::string& text) {
  std::vector<Exposure> out;
  for (const auto& g : split_groups(text)) {
    if (g.size() != 2) throw UsageError("--exposures expects \"gain,gamma;gain,gamma;...\"");
    const Exposure e{parse_number<double>(g[0], "--exposures"), parse_number<double>(g[1], "--exposures")};
    if (!(e.gain > 0) || !(e.gamma > 0)) throw UsageError("--exposures: gain and gamma must be positive");
    out.push_back(e);
  }
  return out;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Translational registration of bracketed exposures with median threshold bitmaps"};
  app.require_subcommand(1);

  CliConfig cfg;
  std::string layout = "packed";
  std::string format = "csv";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--levels", cfg.levels, "Pyramid levels (1-10)")->capture_default_str();
    sub->add_option("--tol", cfg.noise_tolerance, "Noise tolerance around the median (0-127)")->capture_default_str();
    sub->add_option("--layout", layout, "Bitmap layout: bytemap or packed")->capture_default_str();
    sub->add_option("--workers", cfg.workers, "Worker threads")->capture_default_str();
  };

  auto* align = app.add_subcommand(
      "align",
      "Align a stack to its first image. Prints one \"dx dy\" line per input: the displacement of that image's "
      "content relative to the first (positive dx = right, positive dy = down). Outputs are shifted back by that "
      "amount, vacated pixels black. Exclusion maps mark pixels more than --tol from the median as reliable.");
  align->add_option("files", cfg.inputs, "Input images (PPM P6 or PNG), in exposure order")->required();
  align->add_option("-o,--output", cfg.output_dir, "Output directory")->required();
  align->add_option("--report", cfg.report_path, "Write a JSON report here");
  add_common(align);

  fs::path base;
  std::size_t count = 0;
  std::optional<std::uint64_t> seed;
  std::string shifts;
  std::string exposures;
  int max_shift = 30;
  fs::path gen_out;
  auto* gen = app.add_subcommand("generate", "Write a synthetic stack with known shifts and a manifest");
  gen->add_option("--base", base, "Base image (>= 64x64)")->required();
  gen->add_option("--count", count, "Number of frames")->required();
  auto* seed_opt = gen->add_option("--seed", seed, "Draw random shifts and exposures from this seed");
  auto* shifts_opt = gen->add_option("--shifts", shifts, "Pairwise shifts \"dx,dy;...\" (count-1 entries)");
  seed_opt->excludes(shifts_opt);
  gen->add_option("--max-shift", max_shift, "Radius for random shifts")->capture_default_str();
  gen->add_option("--exposures", exposures, "Per-frame \"gain,gamma;...\" (count entries)");
  gen->add_option("-o,--output", gen_out, "Output directory")->required();

  auto* bench = app.add_subcommand("bench", "Time alignment of the first k inputs for k = 2..N");
  bench->add_option("files", cfg.inputs, "Input images")->required();
  bench->add_option("--reps", cfg.repetitions, "Repetitions per row")->default_val(10);
  bench->add_option("--format", format, "csv or json")->capture_default_str();
  add_common(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    if (const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front()) err << sub->help();
    return kUsage;
  }

  if (align->parsed() || bench->parsed()) {
    try {
      cfg.layout = parse_layout(layout);
    } catch (const UsageError& e) {
      err << "error: " << e.what() << '\n';
      return kUsage;
    }
    return align->parsed() ? run_align(cfg, out, err) : run_bench(cfg, format, out, err);
  }

  return guarded(err, [&] {
    if (count < 2) throw UsageError("--count must be at least 2");
    SyntheticSpec spec;
    if (seed) {
      const RgbImage b = decode_image(base);
      spec = random_spec(*seed, count, max_shift, b.width(), b.height());
    } else if (!shifts.empty()) {
      spec.shifts = parse_shifts(shifts);
      if (spec.shifts.size() + 1 != count) throw UsageError("--shifts must list count-1 offsets");
      spec.exposures.assign(count, Exposure{});
    } else {
      throw UsageError("generate needs --seed or --shifts");
    }
    if (!exposures.empty()) {
      spec.exposures = parse_exposures(exposures);
      if (spec.exposures.size() != count) throw UsageError("--exposures must list count entries");
    }
    const auto manifest = run_generate(base, spec, gen_out);
    for (const auto& c : manifest["cumulative"]) out << c[0].get<int>() << ' ' << c[1].get<int>() << '\n';
    return int(kOk);
  });
}

}  // namespace mtb::cli
