#include "faceid/embeddings.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <tuple>

#include "faceid/error.hpp"
#include "text_util.hpp"

namespace faceid {

namespace {

constexpr const char* kEmbeddingHeader = "subject_id,image_id,condition,dim";
constexpr const char* kFeatureHeader =
    "subject_id,image_id,condition,descriptor_id,dim";

[[noreturn]] void fail(const std::filesystem::path& path, std::size_t line_no,
                       const std::string& what) {
  throw FormatError(path.string() + ":" + std::to_string(line_no) + ": " +
                    what);
}

int parse_int(const std::string& s, const std::filesystem::path& path,
              std::size_t line_no, const char* what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    fail(path, line_no, std::string("bad ") + what + " '" + s + "'");
  return value;
}

double parse_double(const std::string& s, const std::filesystem::path& path,
                    std::size_t line_no) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    fail(path, line_no, "bad float '" + s + "'");
  if (!std::isfinite(value))
    fail(path, line_no, "non-finite value '" + s + "'");
  return value;
}

Condition parse_condition(const std::string& s,
                          const std::filesystem::path& path,
                          std::size_t line_no) {
  if (s == "office") return Condition::kOffice;
  if (s == "day") return Condition::kDay;
  if (s == "other") return Condition::kOther;
  fail(path, line_no, "unknown condition '" + s + "'");
}

bool histogram_family(DescriptorId id) {
  return id == DescriptorId::kLbp || id == DescriptorId::kMlbp ||
         id == DescriptorId::kLtp || id == DescriptorId::kLpq;
}

std::vector<LabeledFeature> load_file(const std::filesystem::path& path,
                                      int expected_dim,
                                      bool require_embedding_header) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());

  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) fail(path, 1, "missing header");
  ++line_no;
  bool with_descriptor;
  if (line == kEmbeddingHeader) {
    with_descriptor = false;
  } else if (line == kFeatureHeader && !require_embedding_header) {
    with_descriptor = true;
  } else {
    fail(path, line_no, "unrecognized header '" + line + "'");
  }
  const std::size_t meta_fields = with_descriptor ? 5 : 4;

  std::vector<LabeledFeature> records;
  std::set<std::tuple<std::string, std::string, Condition>> seen;
  int file_dim = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = detail::split(line, ',');
    if (fields.size() < meta_fields + 1)
      fail(path, line_no, "too few fields");

    LabeledFeature rec;
    rec.subject_id = fields[0];
    rec.image_id = fields[1];
    rec.condition = parse_condition(fields[2], path, line_no);
    if (rec.subject_id.empty() || rec.image_id.empty())
      fail(path, line_no, "empty subject_id or image_id");
    if (with_descriptor) {
      const auto id = descriptor_from_string(fields[3]);
      if (!id) fail(path, line_no, "unknown descriptor '" + fields[3] + "'");
      rec.feature.id = *id;
    } else {
      rec.feature.id = DescriptorId::kEmbedding;
    }
    const int dim =
        parse_int(fields[meta_fields - 1], path, line_no, "dim");
    if (dim < 1) fail(path, line_no, "dim must be >= 1");
    if (expected_dim > 0 && dim != expected_dim)
      fail(path, line_no,
           "dim " + std::to_string(dim) + " does not match expected " +
               std::to_string(expected_dim));
    if (file_dim == -1) file_dim = dim;
    if (dim != file_dim)
      fail(path, line_no, "dim differs from earlier records");
    if (fields.size() != meta_fields + static_cast<std::size_t>(dim))
      fail(path, line_no,
           "record declares " + std::to_string(dim) + " values but carries " +
               std::to_string(fields.size() - meta_fields));

    rec.feature.values.reserve(dim);
    for (int i = 0; i < dim; ++i) {
      const double v = parse_double(fields[meta_fields + i], path, line_no);
      if (histogram_family(rec.feature.id) && v < 0.0)
        fail(path, line_no, "negative value in a histogram descriptor");
      rec.feature.values.push_back(v);
    }

    if (!seen.insert({rec.subject_id, rec.image_id, rec.condition}).second)
      fail(path, line_no,
           "duplicate record (" + rec.subject_id + ", " + rec.image_id +
               ", " + to_string(rec.condition) + ")");
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace

const std::vector<ModelInfo>& model_registry() {
  static const std::vector<ModelInfo> registry = {
      {"ResNet-50", 23.5},      {"VGG-16", 138.0},
      {"MobileNetV2", 3.4},     {"EfficientNet-B0", 5.3},
      {"LightCNN-29", 12.6},    {"LightCNN-9", 5.5},
  };
  return registry;
}

std::vector<LabeledFeature> load_embeddings(const std::filesystem::path& path,
                                            int expected_dim) {
  return load_file(path, expected_dim, /*require_embedding_header=*/true);
}

std::vector<LabeledFeature> load_features(const std::filesystem::path& path) {
  return load_file(path, /*expected_dim=*/0, /*require_embedding_header=*/false);
}

std::string format_features(std::span<const LabeledFeature> features,
                            bool with_descriptor_column) {
  std::vector<const LabeledFeature*> sorted;
  sorted.reserve(features.size());
  for (const LabeledFeature& f : features) sorted.push_back(&f);
  std::sort(sorted.begin(), sorted.end(),
            [](const LabeledFeature* a, const LabeledFeature* b) {
              return std::tie(a->subject_id, a->image_id, a->condition) <
                     std::tie(b->subject_id, b->image_id, b->condition);
            });

  std::set<std::tuple<std::string, std::string, Condition>> seen;
  std::ostringstream out;
  out << (with_descriptor_column ? kFeatureHeader : kEmbeddingHeader) << '\n';
  for (const LabeledFeature* f : sorted) {
    for (const std::string* id : {&f->subject_id, &f->image_id}) {
      if (id->empty() || id->find_first_of(",\n\r") != std::string::npos)
        throw FormatError("id '" + *id + "' is empty or contains a separator");
    }
    if (!seen.insert({f->subject_id, f->image_id, f->condition}).second)
      throw FormatError("duplicate record (" + f->subject_id + ", " +
                        f->image_id + ", " + to_string(f->condition) + ")");
    out << f->subject_id << ',' << f->image_id << ','
        << to_string(f->condition) << ',';
    if (with_descriptor_column) out << to_string(f->feature.id) << ',';
    out << f->feature.dim();
    for (double v : f->feature.values) {
      if (!std::isfinite(v))
        throw FormatError("non-finite value in record (" + f->subject_id +
                          ", " + f->image_id + ")");
      out << ',' << detail::format_double(v);
    }
    out << '\n';
  }
  return out.str();
}

void write_features(std::span<const LabeledFeature> features,
                    const std::filesystem::path& path,
                    bool with_descriptor_column) {
  const std::string body = format_features(features, with_descriptor_column);
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << body;
  if (!out) throw FormatError("failed writing " + path.string());
}

}  // namespace faceid
