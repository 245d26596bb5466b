#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "faceid/identification.hpp"

namespace faceid {

struct ModelInfo {
  std::string name;
  double params_millions = 0.0;
};

/// The six evaluated CNN models and their parameter counts (millions).
const std::vector<ModelInfo>& model_registry();

// Feature file format, one record per image:
//   header  subject_id,image_id,condition,dim                    (embeddings)
//   header  subject_id,image_id,condition,descriptor_id,dim      (features)
//   rows    the header fields followed by `dim` float values
// Floats are serialized in shortest round-trip decimal; records are sorted
// by (subject_id, image_id, condition); duplicates are hard errors.

/// Load a 4-column embedding file; every record must carry expected_dim
/// values (pass 0 to accept the file's own dimension). Descriptor id is
/// kEmbedding.
std::vector<LabeledFeature> load_embeddings(const std::filesystem::path& path,
                                            int expected_dim = 512);

/// Load either file variant, detected from the header line.
std::vector<LabeledFeature> load_features(const std::filesystem::path& path);

/// Canonical serialization (sorted records, shortest float form).
std::string format_features(std::span<const LabeledFeature> features,
                            bool with_descriptor_column);
void write_features(std::span<const LabeledFeature> features,
                    const std::filesystem::path& path,
                    bool with_descriptor_column);

inline void write_embeddings(std::span<const LabeledFeature> features,
                             const std::filesystem::path& path) {
  write_features(features, path, /*with_descriptor_column=*/false);
}

}  // namespace faceid
