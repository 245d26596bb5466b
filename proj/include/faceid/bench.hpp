#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>

#include "faceid/descriptors.hpp"

namespace faceid {

/// Per-sample extraction-time statistics in milliseconds.
struct TimingReport {
  std::string extractor_name;
  std::optional<double> params_millions;  // set for CNN rows, empty otherwise
  int n_samples = 0;                      // corpus size * repetitions
  int warmup_runs = 0;
  int repetitions = 0;
  double mean_ms = 0.0;
  double median_ms = 0.0;
  double std_ms = 0.0;
  double min_ms = 0.0;
  double max_ms = 0.0;
  double checksum = 0.0;  // accumulated over results to defeat dead-code elim
};

using ExtractorFn = std::function<FeatureVector(const GrayImage&)>;

/// Run `warmup` untimed passes then `repetitions` timed passes over the
/// corpus, timing each extractor call with a monotonic clock. The timed
/// region is single-threaded; background load perturbs results.
TimingReport benchmark_extractor(const std::string& name,
                                 const ExtractorFn& extractor,
                                 std::span<const GrayImage> corpus,
                                 int warmup = 3, int repetitions = 10);

/// Table-style serialization: model, params, device/host, extraction time.
std::string timing_reports_csv(std::span<const TimingReport> reports,
                               const std::string& host_label);
std::string timing_reports_json(std::span<const TimingReport> reports,
                                const std::string& host_label);

}  // namespace faceid
