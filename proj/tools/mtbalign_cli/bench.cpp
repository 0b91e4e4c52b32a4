#include "mtbalign_cli/bench.hpp"

#include <ostream>
#include <stdexcept>

namespace mtb::cli {

BenchTable bench_sweep(const std::vector<RgbImage>& images, const AlignConfig& config, int repetitions) {
  if (images.size() < 2) throw std::invalid_argument("bench: need at least 2 images");
  BenchTable t;
  t.repetitions = repetitions;
  t.workers = config.workers;
  t.layout = config.layout;
  t.width = images.front().width();
  t.height = images.front().height();
  for (std::size_t k = 2; k <= images.size(); ++k) {
    const std::vector<RgbImage> subset(images.begin(), images.begin() + std::ptrdiff_t(k));
    const TimingReport r = measure_alignment(subset, config, repetitions);
    BenchRow row;
    row.image_count = k;
    row.total = r.total;
    for (std::size_t s = 0; s < stage_count; ++s) row.stage_means[s] = r.stages[s].mean;
    t.rows.push_back(row);
  }
  return t;
}

void write_csv(std::ostream& out, const BenchTable& table) {
  out << "# repetitions=" << table.repetitions << " workers=" << table.workers
      << " layout=" << layout_name(table.layout) << " size=" << table.width << "x" << table.height << '\n';
  out << "count,mean_total_ms,stddev_total_ms";
  for (auto name : stage_names) out << ",mean_" << name << "_ms";
  out << '\n';
  for (const auto& r : table.rows) {
    out << r.image_count << ',' << r.total.mean << ',' << r.total.stddev;
    for (double m : r.stage_means) out << ',' << m;
    out << '\n';
  }
}

nlohmann::json bench_json(const BenchTable& table) {
  nlohmann::json j;
  j["repetitions"] = table.repetitions;
  j["workers"] = table.workers;
  j["layout"] = std::string(layout_name(table.layout));
  j["width"] = table.width;
  j["height"] = table.height;
  j["rows"] = nlohmann::json::array();
  for (const auto& r : table.rows) {
    nlohmann::json row{{"count", r.image_count}, {"mean_total_ms", r.total.mean}, {"stddev_total_ms", r.total.stddev}};
    for (std::size_t s = 0; s < stage_count; ++s) row["mean_" + std::string(stage_names[s]) + "_ms"] = r.stage_means[s];
    j["rows"].push_back(std::move(row));
  }
  return j;
}

LinearFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw std::invalid_argument("fit_line: need >= 2 paired samples");
  const double n = double(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0) throw std::invalid_argument("fit_line: x values are all equal");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (f.slope * xs[i] + f.intercept);
    ss_res += e * e;
  }
  f.r_squared = syy == 0 ? 1.0 : 1.0 - ss_res / syy;
  return f;
}

}  // namespace mtb::cli
