#include "faceid/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "faceid/error.hpp"
#include "text_util.hpp"

namespace faceid {

namespace {

struct Stats {
  double mean = 0.0, median = 0.0, stddev = 0.0, min = 0.0, max = 0.0;
};

Stats compute_stats(std::vector<double> samples) {
  Stats s;
  const std::size_t n = samples.size();
  std::sort(samples.begin(), samples.end());
  s.min = samples.front();
  s.max = samples.back();
  s.median = n % 2 == 1 ? samples[n / 2]
                        : 0.5 * (samples[n / 2 - 1] + samples[n / 2]);
  double sum = 0.0;
  for (double v : samples) sum += v;
  s.mean = sum / static_cast<double>(n);
  if (n > 1) {
    double acc = 0.0;
    for (double v : samples) acc += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(acc / static_cast<double>(n - 1));
  }
  return s;
}

}  // namespace

TimingReport benchmark_extractor(const std::string& name,
                                 const ExtractorFn& extractor,
                                 std::span<const GrayImage> corpus,
                                 int warmup, int repetitions) {
  if (corpus.empty()) throw ArgumentError("benchmark corpus is empty");
  if (repetitions < 1)
    throw ArgumentError("repetitions must be >= 1, got " +
                        std::to_string(repetitions));
  if (warmup < 0)
    throw ArgumentError("warmup must be >= 0, got " + std::to_string(warmup));

  using Clock = std::chrono::steady_clock;
  double checksum = 0.0;

  for (int w = 0; w < warmup; ++w)
    for (const GrayImage& img : corpus) {
      const FeatureVector f = extractor(img);
      checksum += f.values.empty() ? 0.0 : f.values.front();
    }

  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(repetitions) * corpus.size());
  for (int rep = 0; rep < repetitions; ++rep) {
    for (const GrayImage& img : corpus) {
      const auto start = Clock::now();
      const FeatureVector f = extractor(img);
      const auto stop = Clock::now();
      // Consuming one element keeps the extraction from being optimized out.
      checksum += f.values.empty() ? 0.0 : f.values.front() + f.dim();
      samples.push_back(
          std::chrono::duration<double, std::milli>(stop - start).count());
    }
  }

  const Stats stats = compute_stats(samples);
  TimingReport report;
  report.extractor_name = name;
  report.n_samples = static_cast<int>(samples.size());
  report.warmup_runs = warmup;
  report.repetitions = repetitions;
  report.mean_ms = stats.mean;
  report.median_ms = stats.median;
  report.std_ms = stats.stddev;
  report.min_ms = stats.min;
  report.max_ms = stats.max;
  report.checksum = checksum;
  return report;
}

std::string timing_reports_csv(std::span<const TimingReport> reports,
                               const std::string& host_label) {
  std::ostringstream out;
  out << "schema_version,model,params_millions,host,n_samples,warmup,"
         "repetitions,mean_ms,median_ms,std_ms,min_ms,max_ms\n";
  for (const TimingReport& r : reports) {
    out << "1," << r.extractor_name << ',';
    if (r.params_millions) out << detail::format_double(*r.params_millions);
    out << ',' << host_label << ',' << r.n_samples << ',' << r.warmup_runs
        << ',' << r.repetitions;
    for (double v : {r.mean_ms, r.median_ms, r.std_ms, r.min_ms, r.max_ms})
      out << ',' << detail::format_double(v);
    out << '\n';
  }
  return out.str();
}

std::string timing_reports_json(std::span<const TimingReport> reports,
                                const std::string& host_label) {
  nlohmann::json rows = nlohmann::json::array();
  for (const TimingReport& r : reports) {
    nlohmann::json row = {
        {"schema_version", "1"},
        {"model", r.extractor_name},
        {"host", host_label},
        {"n_samples", r.n_samples},
        {"warmup", r.warmup_runs},
        {"repetitions", r.repetitions},
        {"mean_ms", r.mean_ms},
        {"median_ms", r.median_ms},
        {"std_ms", r.std_ms},
        {"min_ms", r.min_ms},
        {"max_ms", r.max_ms},
    };
    if (r.params_millions)
      row["params_millions"] = *r.params_millions;
    else
      row["params_millions"] = nullptr;
    rows.push_back(std::move(row));
  }
  return rows.dump(2) + "\n";
}

}  // namespace faceid
