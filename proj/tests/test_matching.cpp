#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "faceid/error.hpp"
#include "faceid/matching.hpp"
#include "faceid/rng.hpp"

using namespace faceid;

namespace {

FeatureVector vec(std::vector<double> v,
                  DescriptorId id = DescriptorId::kEmbedding) {
  return {id, std::move(v)};
}

FeatureVector random_vec(int dim, Rng& rng) {
  std::vector<double> v(dim);
  for (double& x : v) x = rng.unit() * 2.0 - 1.0;
  return vec(std::move(v));
}

}  // namespace

TEST_CASE("cosine similarity: hand values and self-similarity") {
  CHECK(cosine_similarity(vec({1, 0}), vec({0, 1})).value == 0.0);

  const double expected = 32.0 / std::sqrt(14.0 * 77.0);
  const MatchScore s = cosine_similarity(vec({1, 2, 3}), vec({4, 5, 6}));
  CHECK(s.polarity == Polarity::kSimilarity);
  CHECK(s.value == doctest::Approx(0.974632).epsilon(1e-6));
  CHECK(s.value == doctest::Approx(expected).epsilon(1e-12));

  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const FeatureVector u = random_vec(32, rng);
    CHECK(std::abs(cosine_similarity(u, u).value - 1.0) <= 1e-9);
  }
}

TEST_CASE("cosine similarity: clamped to [-1, 1]") {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const FeatureVector u = random_vec(8, rng);
    FeatureVector v = u;
    for (double& x : v.values) x *= 3.0;  // parallel, prone to rounding > 1
    const double s = cosine_similarity(u, v).value;
    CHECK(s <= 1.0);
    CHECK(s >= -1.0);
  }
}

TEST_CASE("cosine similarity: errors") {
  CHECK_THROWS_AS(cosine_similarity(vec({1, 2}), vec({1, 2, 3})),
                  DimensionError);
  CHECK_THROWS_AS(cosine_similarity(vec({0, 0}), vec({1, 2})),
                  DegenerateVectorError);
}

TEST_CASE("cosine similarity: scale invariance") {
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    const FeatureVector u = random_vec(16, rng);
    const FeatureVector v = random_vec(16, rng);
    const double alpha = rng.unit() * 9.0 + 0.1;
    const double beta = rng.unit() * 9.0 + 0.1;
    FeatureVector su = u, sv = v;
    for (double& x : su.values) x *= alpha;
    for (double& x : sv.values) x *= beta;
    CHECK(std::abs(cosine_similarity(su, sv).value -
                   cosine_similarity(u, v).value) <= 1e-9);
  }
}

TEST_CASE("euclidean distance: hand values and metric axioms") {
  CHECK(euclidean_distance(vec({0, 0}), vec({3, 4})).value == 5.0);
  CHECK(euclidean_distance(vec({0, 0}), vec({3, 4})).polarity ==
        Polarity::kDistance);
  CHECK_THROWS_AS(euclidean_distance(vec({1}), vec({1, 2})), DimensionError);

  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const FeatureVector u = random_vec(8, rng);
    const FeatureVector v = random_vec(8, rng);
    const FeatureVector w = random_vec(8, rng);
    const double duv = euclidean_distance(u, v).value;
    const double dvu = euclidean_distance(v, u).value;
    const double duw = euclidean_distance(u, w).value;
    const double dvw = euclidean_distance(v, w).value;
    CHECK(euclidean_distance(u, u).value == 0.0);
    CHECK(duv >= 0.0);
    CHECK(std::abs(duv - dvu) <= 1e-9);
    CHECK(duw <= duv + dvw + 1e-9);
  }
}

TEST_CASE("score fusion: mean with polarity checks") {
  CHECK(fuse_gallery_scores(std::vector<MatchScore>{
                                {0.8, Polarity::kSimilarity}})
            .value == 0.8);
  CHECK(fuse_gallery_scores(std::vector<MatchScore>{
                                {0.2, Polarity::kSimilarity},
                                {0.4, Polarity::kSimilarity}})
            .value == doctest::Approx(0.3));

  std::vector<MatchScore> copies(7, MatchScore{1.25, Polarity::kDistance});
  CHECK(fuse_gallery_scores(copies).value == doctest::Approx(1.25));
  CHECK(fuse_gallery_scores(copies).polarity == Polarity::kDistance);

  CHECK_THROWS_AS(fuse_gallery_scores(std::vector<MatchScore>{}),
                  ArgumentError);
  CHECK_THROWS_AS(
      fuse_gallery_scores(std::vector<MatchScore>{
          {0.2, Polarity::kSimilarity}, {0.4, Polarity::kDistance}}),
      ArgumentError);
}

TEST_CASE("score fusion: permutation invariance") {
  Rng rng(13);
  std::vector<MatchScore> scores;
  for (int i = 0; i < 12; ++i)
    scores.push_back({rng.unit(), Polarity::kSimilarity});
  const double base = fuse_gallery_scores(scores).value;
  for (int i = 0; i < 10; ++i) {
    for (std::size_t j = scores.size(); j > 1; --j)
      std::swap(scores[j - 1], scores[rng.bounded(j)]);
    CHECK(std::abs(fuse_gallery_scores(scores).value - base) <= 1e-12);
  }
}

TEST_CASE("metric pairing defaults and parsing") {
  CHECK(default_metric_for(DescriptorId::kEmbedding) == Metric::kCosine);
  for (DescriptorId id : extractable_descriptors())
    CHECK(default_metric_for(id) == Metric::kEuclidean);
  CHECK(polarity_of(Metric::kCosine) == Polarity::kSimilarity);
  CHECK(polarity_of(Metric::kEuclidean) == Polarity::kDistance);
  CHECK(metric_from_string("Cosine") == Metric::kCosine);
  CHECK(metric_from_string("EUCLIDEAN") == Metric::kEuclidean);
  CHECK(!metric_from_string("manhattan").has_value());
}
