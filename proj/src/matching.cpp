#include "faceid/matching.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "faceid/error.hpp"

namespace faceid {

namespace {

void check_dims(const FeatureVector& u, const FeatureVector& v) {
  if (u.dim() != v.dim())
    throw DimensionError("vector dimensions differ: " +
                         std::to_string(u.dim()) + " vs " +
                         std::to_string(v.dim()));
}

}  // namespace

const char* to_string(Metric m) {
  return m == Metric::kCosine ? "cosine" : "euclidean";
}

std::optional<Metric> metric_from_string(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "cosine") return Metric::kCosine;
  if (lower == "euclidean") return Metric::kEuclidean;
  return std::nullopt;
}

Polarity polarity_of(Metric m) {
  return m == Metric::kCosine ? Polarity::kSimilarity : Polarity::kDistance;
}

Metric default_metric_for(DescriptorId id) {
  return id == DescriptorId::kEmbedding ? Metric::kCosine
                                        : Metric::kEuclidean;
}

MatchScore cosine_similarity(const FeatureVector& u, const FeatureVector& v) {
  check_dims(u, v);
  double dot = 0.0, uu = 0.0, vv = 0.0;
  for (int i = 0; i < u.dim(); ++i) {
    dot += u.values[i] * v.values[i];
    uu += u.values[i] * u.values[i];
    vv += v.values[i] * v.values[i];
  }
  if (uu == 0.0 || vv == 0.0)
    throw DegenerateVectorError("cosine similarity of a zero-norm vector");
  const double sim = std::clamp(dot / std::sqrt(uu * vv), -1.0, 1.0);
  return {sim, Polarity::kSimilarity};
}

MatchScore euclidean_distance(const FeatureVector& u, const FeatureVector& v) {
  check_dims(u, v);
  double acc = 0.0;
  for (int i = 0; i < u.dim(); ++i) {
    const double d = v.values[i] - u.values[i];
    acc += d * d;
  }
  return {std::sqrt(acc), Polarity::kDistance};
}

MatchScore score(const FeatureVector& u, const FeatureVector& v, Metric m) {
  return m == Metric::kCosine ? cosine_similarity(u, v)
                              : euclidean_distance(u, v);
}

MatchScore fuse_gallery_scores(std::span<const MatchScore> scores) {
  if (scores.empty())
    throw ArgumentError("cannot fuse an empty score list");
  const Polarity polarity = scores.front().polarity;
  double sum = 0.0;
  for (const MatchScore& s : scores) {
    if (s.polarity != polarity)
      throw ArgumentError("cannot fuse scores of mixed polarity");
    sum += s.value;
  }
  return {sum / static_cast<double>(scores.size()), polarity};
}

}  // namespace faceid
