// faceid: batch face-identification toolkit for body-worn-camera imagery.
//
// Subcommands: extract | evaluate | bench | synth-dataset. Exit codes:
// 0 success, 1 internal error, 2 usage/validation error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "faceid/cli.hpp"
#include "faceid/error.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::optional<int> jobs;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> format;
  std::optional<std::string> descriptor;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path,
                  "key=value config file (see README)");
  cmd->add_option("--jobs", opts.jobs, "worker threads; 0 = hardware default");
  cmd->add_option("--seed", opts.seed,
                  "base seed: gallery_seed=N, probe_seed=N+1, synth_seed=N");
  cmd->add_option("--format", opts.format, "output format: csv|json");
  cmd->add_option("--descriptor", opts.descriptor,
                  "descriptor: LBP|mLBP|LTP|LPQ|HOG|PHOG");
}

faceid::RunConfig build_config(const CommonOpts& opts) {
  faceid::RunConfig config;
  if (!opts.config_path.empty()) config.apply_config_file(opts.config_path);
  if (opts.jobs) config.jobs = *opts.jobs;
  if (opts.seed) {
    config.gallery_seed = *opts.seed;
    config.probe_seed = *opts.seed + 1;
    config.synth.seed = *opts.seed;
  }
  if (opts.format) config.apply_key("format", *opts.format);
  if (opts.descriptor) config.descriptor = *opts.descriptor;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"face identification toolkit for body-worn-camera imagery"};
  app.require_subcommand(1);

  CommonOpts extract_opts, evaluate_opts, bench_opts, synth_opts;

  std::string extract_input, extract_out;
  CLI::App* extract = app.add_subcommand(
      "extract", "extract descriptor features from an image tree");
  extract->add_option("--input", extract_input, "dataset root: <condition>/<subject>/<image>.(png|jpg)")->required();
  extract->add_option("--out", extract_out, "output feature file")->required();
  add_common(extract, extract_opts);

  std::string eval_gallery, eval_probes, eval_out;
  std::optional<std::string> eval_metric, eval_gcond, eval_pcond;
  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "run the gallery/probe protocol and report rank-k accuracy");
  evaluate->add_option("--gallery", eval_gallery, "gallery feature file")->required();
  evaluate->add_option("--probes", eval_probes, "probe feature file")->required();
  evaluate->add_option("--out", eval_out, "report file")->required();
  evaluate->add_option("--metric", eval_metric, "auto|cosine|euclidean");
  evaluate->add_option("--gallery-condition", eval_gcond, "office|day|other");
  evaluate->add_option("--probe-condition", eval_pcond, "office|day|other");
  add_common(evaluate, evaluate_opts);

  std::string bench_input, bench_out;
  std::vector<std::string> bench_descriptors;
  CLI::App* bench = app.add_subcommand(
      "bench", "per-sample extraction-time benchmark");
  bench->add_option("--input", bench_input, "image tree to use as corpus")->required();
  bench->add_option("--out", bench_out, "timing report file")->required();
  bench->add_option("--descriptors", bench_descriptors,
                    "descriptors to time (comma separated)")
      ->delimiter(',')
      ->required();
  add_common(bench, bench_opts);

  std::string synth_out;
  std::optional<int> synth_subjects, synth_images, synth_size, synth_shift;
  std::optional<double> synth_noise;
  CLI::App* synth = app.add_subcommand(
      "synth-dataset", "generate a seeded synthetic identification corpus");
  synth->add_option("--out", synth_out, "output dataset root")->required();
  synth->add_option("--subjects", synth_subjects, "number of subjects");
  synth->add_option("--images-per-condition", synth_images,
                    "images per subject per condition");
  synth->add_option("--size", synth_size, "image side length in pixels");
  synth->add_option("--noise-sigma", synth_noise, "per-image noise std-dev");
  synth->add_option("--brightness-shift", synth_shift,
                    "intensity shift for conditions after the first");
  add_common(synth, synth_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return faceid::kExitUsage;
  }

  try {
    if (extract->parsed()) {
      const faceid::RunConfig config = build_config(extract_opts);
      return faceid::cmd_extract(config, extract_input, extract_out);
    }
    if (evaluate->parsed()) {
      faceid::RunConfig config = build_config(evaluate_opts);
      if (eval_metric) config.apply_key("metric", *eval_metric);
      if (eval_gcond) config.apply_key("gallery_condition", *eval_gcond);
      if (eval_pcond) config.apply_key("probe_condition", *eval_pcond);
      return faceid::cmd_evaluate(config, eval_gallery, eval_probes, eval_out);
    }
    if (bench->parsed()) {
      const faceid::RunConfig config = build_config(bench_opts);
      return faceid::cmd_bench(config, bench_input, bench_descriptors,
                               bench_out);
    }
    if (synth->parsed()) {
      faceid::RunConfig config = build_config(synth_opts);
      if (synth_subjects) config.synth.n_subjects = *synth_subjects;
      if (synth_images) config.synth.images_per_condition = *synth_images;
      if (synth_size) config.synth.size = *synth_size;
      if (synth_noise) config.synth.noise_sigma = *synth_noise;
      if (synth_shift) config.synth.brightness_shift = *synth_shift;
      return faceid::cmd_synth_dataset(config, synth_out);
    }
  } catch (const faceid::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return faceid::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return faceid::kExitInternal;
  }
  return faceid::kExitUsage;
}
