#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "faceid/descriptors.hpp"
#include "faceid/identification.hpp"
#include "faceid/synth.hpp"

namespace faceid {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kReportSchemaVersion = "1";

/// Everything a batch run needs. Populated from defaults, then a key=value
/// config file, then command-line overrides.
struct RunConfig {
  // pipeline
  std::string descriptor = "LBP";
  std::string metric = "auto";  // auto | cosine | euclidean
  DescriptorParams params;
  int resize_width = 224;   // 0 disables resizing
  int resize_height = 224;

  // protocol
  int gallery_per_subject = 12;
  int probes_per_subject = 100;
  std::uint64_t gallery_seed = 42;
  std::uint64_t probe_seed = 43;
  int max_rank = 10;
  std::string gallery_condition;  // empty = all conditions
  std::string probe_condition;
  int embedding_dim = 512;  // expected dim for embedding files; 0 = any

  // execution / output
  std::string format = "csv";  // csv | json
  int jobs = 0;                // 0 = hardware default
  std::string host_label = "unknown-host";
  int warmup = 3;
  int repetitions = 10;

  // synth-dataset
  SynthParams synth;

  /// Apply `key=value` lines ('#' comments, blank lines ignored).
  /// Unknown keys and unparsable values raise ArgumentError.
  void apply_config_file(const std::filesystem::path& path);
  void apply_key(const std::string& key, const std::string& value);
};

int cmd_extract(const RunConfig& config, const std::filesystem::path& input_dir,
                const std::filesystem::path& out);
int cmd_evaluate(const RunConfig& config,
                 const std::filesystem::path& gallery_features,
                 const std::filesystem::path& probe_features,
                 const std::filesystem::path& out);
int cmd_bench(const RunConfig& config, const std::filesystem::path& input_dir,
              const std::vector<std::string>& descriptors,
              const std::filesystem::path& out);
int cmd_synth_dataset(const RunConfig& config,
                      const std::filesystem::path& out_dir);

}  // namespace faceid
