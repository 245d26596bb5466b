#include "faceid/identification.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <tuple>
#include <sstream>

#include <omp.h>

#include "faceid/error.hpp"
#include "faceid/rng.hpp"

namespace faceid {

namespace {

// Stable grouping with sorted subjects and per-subject (image, condition)
// ordering, so seeded sampling is reproducible for any input order.
std::map<std::string, std::vector<const LabeledFeature*>> group_by_subject(
    std::span<const LabeledFeature> features) {
  std::map<std::string, std::vector<const LabeledFeature*>> groups;
  std::set<std::tuple<std::string, std::string, Condition>> seen;
  for (const LabeledFeature& f : features) {
    if (f.subject_id.empty() || f.image_id.empty())
      throw ProtocolError("subject_id and image_id must be nonempty");
    if (!seen.insert({f.subject_id, f.image_id, f.condition}).second)
      throw ProtocolError("duplicate feature (" + f.subject_id + ", " +
                          f.image_id + ", " + to_string(f.condition) + ")");
    groups[f.subject_id].push_back(&f);
  }
  for (auto& [subject, list] : groups) {
    std::sort(list.begin(), list.end(),
              [](const LabeledFeature* a, const LabeledFeature* b) {
                return std::tie(a->image_id, a->condition) <
                       std::tie(b->image_id, b->condition);
              });
  }
  return groups;
}

// Partial Fisher-Yates draw of `count` entries, in draw order.
template <typename T>
std::vector<T> sample_without_replacement(std::vector<T> pool, int count,
                                          Rng& rng) {
  const int n = static_cast<int>(pool.size());
  for (int i = 0; i < count; ++i) {
    const int j =
        i + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return pool;
}

void check_uniform(std::span<const LabeledFeature> features) {
  if (features.empty()) return;
  const DescriptorId id = features.front().feature.id;
  const int dim = features.front().feature.dim();
  for (const LabeledFeature& f : features) {
    if (f.feature.id != id)
      throw ProtocolError("feature set mixes descriptors: " +
                          std::string(to_string(id)) + " and " +
                          std::string(to_string(f.feature.id)));
    if (f.feature.dim() != dim)
      throw DimensionError("feature set mixes dimensions: " +
                           std::to_string(dim) + " and " +
                           std::to_string(f.feature.dim()));
  }
}

}  // namespace

const char* to_string(Condition c) {
  switch (c) {
    case Condition::kOffice: return "office";
    case Condition::kDay: return "day";
    case Condition::kOther: return "other";
  }
  return "?";
}

Condition condition_from_string(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "office") return Condition::kOffice;
  if (lower == "day") return Condition::kDay;
  return Condition::kOther;
}

int Gallery::template_count() const {
  int n = 0;
  for (const auto& [subject, list] : templates)
    n += static_cast<int>(list.size());
  return n;
}

bool Gallery::contains(const std::string& subject_id,
                       const std::string& image_id,
                       Condition condition) const {
  auto it = templates.find(subject_id);
  if (it == templates.end()) return false;
  return std::any_of(it->second.begin(), it->second.end(),
                     [&](const LabeledFeature& f) {
                       return f.image_id == image_id &&
                              f.condition == condition;
                     });
}

double CMCCurve::rank(int k) const {
  if (k < 1) throw ArgumentError("rank index must be >= 1");
  const int idx = std::min(k, max_rank) - 1;
  return accuracy[idx];
}

Gallery enroll_gallery(std::span<const LabeledFeature> features,
                       int per_subject, std::uint64_t seed) {
  if (per_subject < 1)
    throw ArgumentError("per_subject must be >= 1, got " +
                        std::to_string(per_subject));
  check_uniform(features);
  const auto groups = group_by_subject(features);
  if (groups.empty()) throw ProtocolError("no features to enroll");

  std::vector<std::string> starved;
  for (const auto& [subject, list] : groups)
    if (static_cast<int>(list.size()) < per_subject) starved.push_back(subject);
  if (!starved.empty()) {
    std::ostringstream msg;
    msg << "subjects with fewer than " << per_subject << " images:";
    for (const auto& s : starved) msg << ' ' << s;
    throw ProtocolError(msg.str());
  }

  Gallery gallery;
  gallery.descriptor_id = features.front().feature.id;
  gallery.dim = features.front().feature.dim();
  Rng rng(seed);
  for (const auto& [subject, list] : groups) {
    auto chosen = sample_without_replacement(list, per_subject, rng);
    std::sort(chosen.begin(), chosen.end(),
              [](const LabeledFeature* a, const LabeledFeature* b) {
                return std::tie(a->image_id, a->condition) <
                       std::tie(b->image_id, b->condition);
              });
    auto& slot = gallery.templates[subject];
    slot.reserve(chosen.size());
    for (const LabeledFeature* f : chosen) slot.push_back(*f);
  }
  return gallery;
}

ProbeSet sample_probes(std::span<const LabeledFeature> features,
                       int per_subject, std::uint64_t seed,
                       const Gallery& exclude) {
  if (per_subject < 1)
    throw ArgumentError("per_subject must be >= 1, got " +
                        std::to_string(per_subject));
  check_uniform(features);
  const auto groups = group_by_subject(features);

  ProbeSet result;
  Rng rng(seed);
  for (const auto& [subject, list] : groups) {
    std::vector<const LabeledFeature*> pool;
    for (const LabeledFeature* f : list)
      if (!exclude.contains(subject, f->image_id, f->condition))
        pool.push_back(f);
    if (pool.empty())
      throw ProtocolError("no probe candidates left for subject " + subject);
    const int take = std::min<int>(per_subject, static_cast<int>(pool.size()));
    if (take < per_subject) result.shortfall[subject] = per_subject - take;
    auto chosen = sample_without_replacement(pool, take, rng);
    std::sort(chosen.begin(), chosen.end(),
              [](const LabeledFeature* a, const LabeledFeature* b) {
                return std::tie(a->image_id, a->condition) <
                       std::tie(b->image_id, b->condition);
              });
    for (const LabeledFeature* f : chosen) result.probes.push_back(*f);
  }
  return result;
}

std::vector<std::pair<std::string, MatchScore>> identify(
    const FeatureVector& probe, const Gallery& gallery, Metric metric) {
  if (probe.dim() != gallery.dim)
    throw DimensionError("probe dim " + std::to_string(probe.dim()) +
                         " does not match gallery dim " +
                         std::to_string(gallery.dim));
  std::vector<std::pair<std::string, MatchScore>> ranked;
  ranked.reserve(gallery.templates.size());
  std::vector<MatchScore> scores;
  for (const auto& [subject, templates] : gallery.templates) {
    scores.clear();
    for (const LabeledFeature& t : templates)
      scores.push_back(score(probe, t.feature, metric));
    ranked.emplace_back(subject, fuse_gallery_scores(scores));
  }
  const bool ascending = polarity_of(metric) == Polarity::kDistance;
  std::sort(ranked.begin(), ranked.end(), [ascending](const auto& a,
                                                      const auto& b) {
    if (a.second.value != b.second.value)
      return ascending ? a.second.value < b.second.value
                       : a.second.value > b.second.value;
    return a.first < b.first;  // deterministic tie-break
  });
  return ranked;
}

CMCCurve compute_cmc(std::span<const LabeledFeature> probes,
                     const Gallery& gallery, Metric metric, int max_rank,
                     int threads) {
  if (probes.empty()) throw ProtocolError("probe set is empty");
  if (max_rank < 1)
    throw ArgumentError("max_rank must be >= 1, got " +
                        std::to_string(max_rank));
  for (const LabeledFeature& p : probes)
    if (gallery.templates.find(p.subject_id) == gallery.templates.end())
      throw ProtocolError("probe subject " + p.subject_id +
                          " is not enrolled in the gallery");

  // Hit counting per rank position is order-independent, so the parallel
  // probe loop reproduces the sequential result exactly.
  const int n = static_cast<int>(probes.size());
  const int n_subjects = gallery.subject_count();
  std::vector<long> hits(n_subjects, 0);
  const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel num_threads(team)
  {
    std::vector<long> local(n_subjects, 0);
#pragma omp for schedule(dynamic, 8) nowait
    for (int i = 0; i < n; ++i) {
      const auto ranked = identify(probes[i].feature, gallery, metric);
      for (int r = 0; r < static_cast<int>(ranked.size()); ++r) {
        if (ranked[r].first == probes[i].subject_id) {
          ++local[r];
          break;
        }
      }
    }
#pragma omp critical
    for (int r = 0; r < n_subjects; ++r) hits[r] += local[r];
  }

  CMCCurve curve;
  curve.max_rank = max_rank;
  curve.n_probes = n;
  curve.accuracy.resize(max_rank);
  long cumulative = 0;
  for (int k = 0; k < max_rank; ++k) {
    if (k < n_subjects) cumulative += hits[k];
    curve.accuracy[k] =
        static_cast<double>(cumulative) / static_cast<double>(n);
  }
  return curve;
}

EvalResult cross_condition_eval(Condition gallery_condition,
                                Condition probe_condition,
                                std::span<const LabeledFeature> dataset,
                                const EvalConfig& config) {
  std::vector<LabeledFeature> gallery_pool, probe_pool;
  std::set<std::string> subjects, gallery_subjects, probe_subjects;
  for (const LabeledFeature& f : dataset) {
    subjects.insert(f.subject_id);
    if (f.condition == gallery_condition) {
      gallery_pool.push_back(f);
      gallery_subjects.insert(f.subject_id);
    }
    if (f.condition == probe_condition) {
      probe_pool.push_back(f);
      probe_subjects.insert(f.subject_id);
    }
  }
  for (const std::string& s : subjects) {
    if (!gallery_subjects.count(s))
      throw ProtocolError("subject " + s + " has no images in condition " +
                          to_string(gallery_condition));
    if (!probe_subjects.count(s))
      throw ProtocolError("subject " + s + " has no images in condition " +
                          to_string(probe_condition));
  }

  Gallery gallery = enroll_gallery(gallery_pool, config.gallery_per_subject,
                                   config.gallery_seed);
  ProbeSet probes = sample_probes(probe_pool, config.probes_per_subject,
                                  config.probe_seed, gallery);

  EvalResult result;
  result.cmc = compute_cmc(probes.probes, gallery, config.metric,
                           config.max_rank, config.threads);
  result.n_subjects = gallery.subject_count();
  result.n_templates = gallery.template_count();
  result.n_probes = static_cast<int>(probes.probes.size());
  result.shortfall = std::move(probes.shortfall);
  return result;
}

}  // namespace faceid
