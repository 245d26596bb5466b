#include "faceid/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <omp.h>

#include <json.hpp>

#include "faceid/bench.hpp"
#include "faceid/codec.hpp"
#include "faceid/embeddings.hpp"
#include "faceid/error.hpp"
#include "text_util.hpp"

namespace faceid {

namespace {

int parse_int_value(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(value, &used);
    if (used == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw ArgumentError("config key '" + key + "': bad integer '" + value + "'");
}

std::uint64_t parse_u64_value(const std::string& key,
                              const std::string& value) {
  try {
    std::size_t used = 0;
    const std::uint64_t v = std::stoull(value, &used);
    if (used == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw ArgumentError("config key '" + key + "': bad integer '" + value + "'");
}

double parse_double_value(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used == value.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw ArgumentError("config key '" + key + "': bad number '" + value + "'");
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

std::string condition_label(const std::string& name) {
  if (name.empty()) return "All";
  std::string label = detail::to_lower(name);
  label[0] = static_cast<char>(label[0] - 'a' + 'A');
  return label;
}

std::string percent_2dp(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", fraction * 100.0);
  return buf;
}

double percent_2dp_value(double fraction) {
  return std::round(fraction * 10000.0) / 100.0;
}

DescriptorId resolve_extractable(const std::string& name) {
  const auto id = descriptor_from_string(name);
  if (id && *id != DescriptorId::kEmbedding) return *id;
  std::ostringstream msg;
  msg << "unknown descriptor '" << name << "'; valid names:";
  for (DescriptorId d : extractable_descriptors()) msg << ' ' << to_string(d);
  throw ArgumentError(msg.str());
}

Metric resolve_metric(const RunConfig& config, DescriptorId descriptor) {
  if (config.metric == "auto") return default_metric_for(descriptor);
  const auto m = metric_from_string(config.metric);
  if (!m)
    throw ArgumentError("unknown metric '" + config.metric +
                        "'; valid: auto cosine euclidean");
  return *m;
}

bool has_image_extension(const std::filesystem::path& p) {
  const std::string ext = detail::to_lower(p.extension().string());
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

std::vector<std::filesystem::path> sorted_entries(
    const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

struct DatasetEntry {
  std::string condition;
  std::string subject_id;
  std::string image_id;
  std::filesystem::path path;
};

// Layout: <condition>/<subject_id>/<image_id>.(png|jpg|jpeg)
std::vector<DatasetEntry> walk_dataset(const std::filesystem::path& root) {
  if (!std::filesystem::is_directory(root))
    throw ArgumentError("input directory does not exist: " + root.string());
  std::vector<DatasetEntry> entries;
  for (const auto& cond_dir : sorted_entries(root)) {
    if (!std::filesystem::is_directory(cond_dir)) continue;
    for (const auto& subj_dir : sorted_entries(cond_dir)) {
      if (!std::filesystem::is_directory(subj_dir)) continue;
      for (const auto& file : sorted_entries(subj_dir)) {
        if (!std::filesystem::is_regular_file(file) ||
            !has_image_extension(file))
          continue;
        entries.push_back({cond_dir.filename().string(),
                           subj_dir.filename().string(),
                           file.stem().string(), file});
      }
    }
  }
  return entries;
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& body) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << body;
  if (!out) throw FormatError("failed writing " + path.string());
}

// Embedding files are validated against the configured dimension; descriptor
// feature files carry their own.
std::vector<LabeledFeature> load_feature_file(const RunConfig& config,
                                              const std::filesystem::path& path) {
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  in.close();
  if (header == "subject_id,image_id,condition,dim")
    return load_embeddings(path, config.embedding_dim);
  return load_features(path);
}

std::vector<LabeledFeature> filter_condition(
    std::vector<LabeledFeature> features, const std::string& condition_name) {
  if (condition_name.empty()) return features;
  const Condition wanted = condition_from_string(condition_name);
  std::erase_if(features, [wanted](const LabeledFeature& f) {
    return f.condition != wanted;
  });
  return features;
}

}  // namespace

void RunConfig::apply_key(const std::string& key, const std::string& value) {
  if (key == "descriptor") descriptor = value;
  else if (key == "metric") metric = detail::to_lower(value);
  else if (key == "block_size") params.block_size = parse_int_value(key, value);
  else if (key == "window") params.window = parse_int_value(key, value);
  else if (key == "ltp_threshold") params.ltp_threshold = parse_int_value(key, value);
  else if (key == "lpq_window") params.lpq_window = parse_int_value(key, value);
  else if (key == "hog_cell") params.hog_cell = parse_int_value(key, value);
  else if (key == "hog_bins") params.hog_bins = parse_int_value(key, value);
  else if (key == "phog_levels") params.phog_levels = parse_int_value(key, value);
  else if (key == "phog_bins") params.phog_bins = parse_int_value(key, value);
  else if (key == "resize_width") resize_width = parse_int_value(key, value);
  else if (key == "resize_height") resize_height = parse_int_value(key, value);
  else if (key == "gallery_per_subject") gallery_per_subject = parse_int_value(key, value);
  else if (key == "probes_per_subject") probes_per_subject = parse_int_value(key, value);
  else if (key == "gallery_seed") gallery_seed = parse_u64_value(key, value);
  else if (key == "probe_seed") probe_seed = parse_u64_value(key, value);
  else if (key == "max_rank") max_rank = parse_int_value(key, value);
  else if (key == "gallery_condition") gallery_condition = detail::to_lower(value);
  else if (key == "probe_condition") probe_condition = detail::to_lower(value);
  else if (key == "embedding_dim") embedding_dim = parse_int_value(key, value);
  else if (key == "format") format = detail::to_lower(value);
  else if (key == "jobs") jobs = parse_int_value(key, value);
  else if (key == "host_label") host_label = value;
  else if (key == "warmup") warmup = parse_int_value(key, value);
  else if (key == "repetitions") repetitions = parse_int_value(key, value);
  else if (key == "synth_subjects") synth.n_subjects = parse_int_value(key, value);
  else if (key == "synth_images_per_condition") synth.images_per_condition = parse_int_value(key, value);
  else if (key == "synth_size") synth.size = parse_int_value(key, value);
  else if (key == "synth_noise_sigma") synth.noise_sigma = parse_double_value(key, value);
  else if (key == "synth_brightness_shift") synth.brightness_shift = parse_int_value(key, value);
  else if (key == "synth_seed") synth.seed = parse_u64_value(key, value);
  else if (key == "synth_conditions") {
    synth.conditions.clear();
    for (const std::string& name : detail::split(value, ','))
      synth.conditions.push_back(condition_from_string(trim(name)));
  } else {
    throw ArgumentError("unknown config key '" + key + "'");
  }
}

void RunConfig::apply_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open config file " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ArgumentError(path.string() + ":" + std::to_string(line_no) +
                          ": expected key=value");
    apply_key(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

int cmd_extract(const RunConfig& config, const std::filesystem::path& input_dir,
                const std::filesystem::path& out) {
  try {
    const DescriptorId id = resolve_extractable(config.descriptor);
    config.params.validate();
    const auto entries = walk_dataset(input_dir);
    if (entries.empty()) {
      std::cerr << "error: no images found under " << input_dir << "\n";
      return kExitUsage;
    }

    const int n = static_cast<int>(entries.size());
    std::vector<LabeledFeature> records(n);
    std::vector<char> ok(n, 0);
    std::vector<std::string> warnings(n);
    const int team = config.jobs > 0 ? config.jobs : omp_get_max_threads();
#pragma omp parallel for num_threads(team) schedule(dynamic)
    for (int i = 0; i < n; ++i) {
      try {
        GrayImage img = read_image_gray(entries[i].path);
        if (config.resize_width > 0 && config.resize_height > 0 &&
            (img.width != config.resize_width ||
             img.height != config.resize_height))
          img = resize_bilinear(img, config.resize_width, config.resize_height);
        records[i] = {entries[i].subject_id, entries[i].image_id,
                      condition_from_string(entries[i].condition),
                      extract(id, img, config.params, /*threads=*/1)};
        ok[i] = 1;
      } catch (const std::exception& e) {
        warnings[i] = e.what();
      }
    }

    std::vector<LabeledFeature> kept;
    int warning_count = 0;
    for (int i = 0; i < n; ++i) {
      if (ok[i]) {
        kept.push_back(std::move(records[i]));
      } else {
        ++warning_count;
        std::cerr << "warning: skipped " << entries[i].path << ": "
                  << warnings[i] << "\n";
      }
    }
    if (kept.empty()) {
      std::cerr << "error: no image could be decoded under " << input_dir
                << "\n";
      return kExitUsage;
    }
    write_features(kept, out, /*with_descriptor_column=*/true);
    std::cout << "extracted " << kept.size() << " " << to_string(id)
              << " features (" << warning_count << " warnings) -> "
              << out.string() << "\n";
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int cmd_evaluate(const RunConfig& config,
                 const std::filesystem::path& gallery_features,
                 const std::filesystem::path& probe_features,
                 const std::filesystem::path& out) {
  try {
    auto gallery_set = filter_condition(
        load_feature_file(config, gallery_features), config.gallery_condition);
    auto probe_set = filter_condition(load_feature_file(config, probe_features),
                                      config.probe_condition);
    if (gallery_set.empty() || probe_set.empty())
      throw ProtocolError("no features left after condition filtering");

    const DescriptorId descriptor = gallery_set.front().feature.id;
    const int dim = gallery_set.front().feature.dim();
    if (probe_set.front().feature.id != descriptor)
      throw ProtocolError(
          std::string("descriptor mismatch between feature files: ") +
          to_string(descriptor) + " vs " +
          to_string(probe_set.front().feature.id));
    if (probe_set.front().feature.dim() != dim)
      throw DimensionError(
          "dimension mismatch between feature files: " + std::to_string(dim) +
          " vs " + std::to_string(probe_set.front().feature.dim()));

    const Metric metric = resolve_metric(config, descriptor);
    const Gallery gallery = enroll_gallery(
        gallery_set, config.gallery_per_subject, config.gallery_seed);
    const ProbeSet probes = sample_probes(
        probe_set, config.probes_per_subject, config.probe_seed, gallery);
    const CMCCurve cmc = compute_cmc(probes.probes, gallery, metric,
                                     config.max_rank, config.jobs);

    const std::string label = condition_label(config.gallery_condition) +
                              " vs. " +
                              condition_label(config.probe_condition);
    int shortfall_total = 0;
    for (const auto& [subject, missing] : probes.shortfall)
      shortfall_total += missing;

    std::string body;
    if (config.format == "json") {
      nlohmann::json doc = {
          {"schema_version", kReportSchemaVersion},
          {"label", label},
          {"descriptor", to_string(descriptor)},
          {"metric", to_string(metric)},
          {"n_subjects", gallery.subject_count()},
          {"gallery_per_subject", config.gallery_per_subject},
          {"n_gallery_templates", gallery.template_count()},
          {"probes_per_subject", config.probes_per_subject},
          {"n_probes", cmc.n_probes},
          {"shortfall_total", shortfall_total},
          {"gallery_seed", config.gallery_seed},
          {"probe_seed", config.probe_seed},
          {"max_rank", cmc.max_rank},
          {"rank1_pct", percent_2dp_value(cmc.rank(1))},
          {"rank5_pct", percent_2dp_value(cmc.rank(5))},
          {"rank10_pct", percent_2dp_value(cmc.rank(10))},
          {"cmc", cmc.accuracy},
      };
      body = doc.dump(2) + "\n";
    } else if (config.format == "csv") {
      std::ostringstream csv;
      csv << "schema_version,label,descriptor,metric,n_subjects,"
             "gallery_per_subject,n_gallery_templates,probes_per_subject,"
             "n_probes,shortfall_total,gallery_seed,probe_seed,max_rank,"
             "rank1_pct,rank5_pct,rank10_pct,cmc\n";
      csv << kReportSchemaVersion << ',' << label << ','
          << to_string(descriptor) << ',' << to_string(metric) << ','
          << gallery.subject_count() << ',' << config.gallery_per_subject
          << ',' << gallery.template_count() << ','
          << config.probes_per_subject << ',' << cmc.n_probes << ','
          << shortfall_total << ',' << config.gallery_seed << ','
          << config.probe_seed << ',' << cmc.max_rank << ','
          << percent_2dp(cmc.rank(1)) << ',' << percent_2dp(cmc.rank(5))
          << ',' << percent_2dp(cmc.rank(10)) << ',';
      for (std::size_t i = 0; i < cmc.accuracy.size(); ++i)
        csv << (i ? "|" : "") << detail::format_double(cmc.accuracy[i]);
      csv << '\n';
      body = csv.str();
    } else {
      throw ArgumentError("unknown format '" + config.format +
                          "'; valid: csv json");
    }
    write_text_file(out, body);
    std::cout << label << " " << to_string(descriptor) << "/"
              << to_string(metric) << ": rank-1 " << percent_2dp(cmc.rank(1))
              << "% rank-5 " << percent_2dp(cmc.rank(5)) << "% rank-10 "
              << percent_2dp(cmc.rank(10)) << "% (" << cmc.n_probes
              << " probes) -> " << out.string() << "\n";
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int cmd_bench(const RunConfig& config, const std::filesystem::path& input_dir,
              const std::vector<std::string>& descriptors,
              const std::filesystem::path& out) {
  try {
    if (descriptors.empty())
      throw ArgumentError("no descriptors requested for benchmarking");
    std::vector<DescriptorId> ids;
    for (const std::string& name : descriptors)
      ids.push_back(resolve_extractable(name));
    config.params.validate();
    if (config.repetitions < 1)
      throw ArgumentError("repetitions must be >= 1");

    const auto entries = walk_dataset(input_dir);
    std::vector<GrayImage> corpus;
    for (const auto& entry : entries) {
      GrayImage img = read_image_gray(entry.path);
      if (config.resize_width > 0 && config.resize_height > 0 &&
          (img.width != config.resize_width ||
           img.height != config.resize_height))
        img = resize_bilinear(img, config.resize_width, config.resize_height);
      corpus.push_back(std::move(img));
    }
    if (corpus.empty())
      throw ArgumentError("no images found under " + input_dir.string());

    std::vector<TimingReport> reports;
    for (DescriptorId id : ids) {
      // Single-threaded timed region keeps per-sample numbers interpretable.
      reports.push_back(benchmark_extractor(
          to_string(id),
          [&](const GrayImage& img) {
            return extract(id, img, config.params, /*threads=*/1);
          },
          corpus, config.warmup, config.repetitions));
      std::cout << to_string(id) << ": mean "
                << reports.back().mean_ms << " ms/sample over "
                << reports.back().n_samples << " samples\n";
    }

    std::string body;
    if (config.format == "json")
      body = timing_reports_json(reports, config.host_label);
    else if (config.format == "csv")
      body = timing_reports_csv(reports, config.host_label);
    else
      throw ArgumentError("unknown format '" + config.format +
                          "'; valid: csv json");
    write_text_file(out, body);
    std::cout << "timing report -> " << out.string() << "\n";
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int cmd_synth_dataset(const RunConfig& config,
                      const std::filesystem::path& out_dir) {
  try {
    const auto images = generate_dataset(config.synth);
    for (const SynthImage& si : images) {
      const auto dir =
          out_dir / to_string(si.condition) / si.subject_id;
      std::filesystem::create_directories(dir);
      write_png_gray(dir / (si.image_id + ".png"), si.image);
    }
    std::cout << "wrote " << images.size() << " images ("
              << config.synth.n_subjects << " subjects, "
              << config.synth.conditions.size() << " conditions) under "
              << out_dir.string() << "\n";
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace faceid
