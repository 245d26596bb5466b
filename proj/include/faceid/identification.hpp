#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "faceid/matching.hpp"

namespace faceid {

enum class Condition { kOffice, kDay, kOther };

const char* to_string(Condition c);
/// "office"/"day" (case-insensitive) map to their conditions, anything else
/// to kOther.
Condition condition_from_string(std::string_view name);

struct LabeledFeature {
  std::string subject_id;
  std::string image_id;
  Condition condition = Condition::kOther;
  FeatureVector feature;
};

/// Enrolled templates per subject. Subjects iterate in sorted order.
struct Gallery {
  DescriptorId descriptor_id = DescriptorId::kEmbedding;
  int dim = 0;
  std::map<std::string, std::vector<LabeledFeature>> templates;

  int subject_count() const { return static_cast<int>(templates.size()); }
  int template_count() const;
  bool contains(const std::string& subject_id, const std::string& image_id,
                Condition condition) const;
};

/// Cumulative rank-k identification accuracies, accuracy[k-1] = rank-k rate.
struct CMCCurve {
  int max_rank = 0;
  std::vector<double> accuracy;
  int n_probes = 0;

  double rank(int k) const;  // k in [1, max_rank], clamped above
};

struct ProbeSet {
  std::vector<LabeledFeature> probes;
  /// subject -> images missing versus the requested per-subject count.
  std::map<std::string, int> shortfall;
};

/// Seeded draw of per_subject templates for every subject. Subjects with
/// fewer images raise ProtocolError naming them all.
Gallery enroll_gallery(std::span<const LabeledFeature> features,
                       int per_subject = 12, std::uint64_t seed = 42);

/// Seeded draw of up to per_subject probes per subject, never reusing a
/// gallery (subject, image, condition) triple. A short pool is taken whole
/// and recorded; an empty pool raises ProtocolError.
ProbeSet sample_probes(std::span<const LabeledFeature> features,
                       int per_subject, std::uint64_t seed,
                       const Gallery& exclude);

/// One fused score per gallery subject, sorted best-first; ties break by
/// ascending subject id.
std::vector<std::pair<std::string, MatchScore>> identify(
    const FeatureVector& probe, const Gallery& gallery, Metric metric);

CMCCurve compute_cmc(std::span<const LabeledFeature> probes,
                     const Gallery& gallery, Metric metric, int max_rank = 10,
                     int threads = 0);

struct EvalConfig {
  int gallery_per_subject = 12;
  int probes_per_subject = 100;
  std::uint64_t gallery_seed = 42;
  std::uint64_t probe_seed = 43;
  int max_rank = 10;
  Metric metric = Metric::kEuclidean;
  int threads = 0;
};

struct EvalResult {
  CMCCurve cmc;
  int n_subjects = 0;
  int n_templates = 0;
  int n_probes = 0;
  std::map<std::string, int> shortfall;
};

/// Enroll from one lighting condition, probe from another (independent
/// seeded draws), then score the CMC. Both conditions must cover every
/// subject.
EvalResult cross_condition_eval(Condition gallery_condition,
                                Condition probe_condition,
                                std::span<const LabeledFeature> dataset,
                                const EvalConfig& config);

}  // namespace faceid
