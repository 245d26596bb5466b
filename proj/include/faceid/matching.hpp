#pragma once

#include <span>

#include "faceid/descriptors.hpp"

namespace faceid {

enum class Polarity { kSimilarity, kDistance };  // higher-better / lower-better

struct MatchScore {
  double value = 0.0;
  Polarity polarity = Polarity::kSimilarity;
};

enum class Metric { kCosine, kEuclidean };

const char* to_string(Metric m);
std::optional<Metric> metric_from_string(std::string_view name);

Polarity polarity_of(Metric m);

/// Default pairing: cosine for embeddings, Euclidean for handcrafted
/// features.
Metric default_metric_for(DescriptorId id);

/// sim = u.v / (|u||v|), clamped to [-1, 1]. Throws DimensionError on dim
/// mismatch, DegenerateVectorError on a zero-norm input.
MatchScore cosine_similarity(const FeatureVector& u, const FeatureVector& v);

/// d = sqrt(sum (v_i - u_i)^2). Throws DimensionError on dim mismatch.
MatchScore euclidean_distance(const FeatureVector& u, const FeatureVector& v);

MatchScore score(const FeatureVector& u, const FeatureVector& v, Metric m);

/// Arithmetic mean of same-polarity scores (multi-gallery fusion).
MatchScore fuse_gallery_scores(std::span<const MatchScore> scores);

}  // namespace faceid
