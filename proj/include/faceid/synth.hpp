#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "faceid/identification.hpp"
#include "faceid/image.hpp"
#include "faceid/rng.hpp"

namespace faceid {

/// Synthetic identification corpus: one base texture per subject, additive
/// Gaussian pixel noise per image, optional global brightness shift per
/// condition (emulating a lighting change). subject_blend mixes a shared
/// texture into every subject's base; 0 gives fully distinct subjects,
/// values toward 1 make them confusable.
struct SynthParams {
  int n_subjects = 20;
  int images_per_condition = 32;
  int size = 224;
  double noise_sigma = 22.0;
  int brightness_shift = 40;  // applied to every condition after the first
  double subject_blend = 0.72;
  std::vector<Condition> conditions = {Condition::kOffice, Condition::kDay};
  std::uint64_t seed = 1;
};

struct SynthImage {
  std::string subject_id;
  std::string image_id;
  Condition condition = Condition::kOther;
  GrayImage image;
};

/// Two-octave value-noise texture, contrast-stretched to span [0, 255].
GrayImage make_texture(int size, std::uint64_t seed);

/// Rounded additive Gaussian noise plus a global shift, clamped to [0, 255].
GrayImage add_noise_and_shift(const GrayImage& img, double noise_sigma,
                              int shift, Rng& rng);

std::vector<SynthImage> generate_dataset(const SynthParams& params);

}  // namespace faceid
