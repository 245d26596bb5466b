#include "faceid/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>

#include "faceid/error.hpp"

namespace faceid {

namespace {

// splitmix64 finalizer; derives independent per-subject / per-image streams.
std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

// Weighted mix of two rasters, contrast-stretched back to [0, 255].
GrayImage blend_stretch(const GrayImage& a, const GrayImage& b,
                        double weight_a) {
  std::vector<double> mixed(a.pixel_count());
  for (std::size_t i = 0; i < mixed.size(); ++i)
    mixed[i] = weight_a * a.data[i] + (1.0 - weight_a) * b.data[i];
  const auto [lo, hi] = std::minmax_element(mixed.begin(), mixed.end());
  const double span = *hi > *lo ? *hi - *lo : 1.0;
  GrayImage out(a.width, a.height);
  for (std::size_t i = 0; i < mixed.size(); ++i)
    out.data[i] = static_cast<std::uint8_t>(
        std::clamp(round_half_up(255.0 * (mixed[i] - *lo) / span), 0, 255));
  return out;
}

// Bilinearly upsampled random lattice, values in [0, 1].
std::vector<double> value_noise(int size, int cell, Rng& rng) {
  const int grid = size / cell + 2;
  std::vector<double> lattice(static_cast<std::size_t>(grid) * grid);
  for (double& v : lattice) v = rng.unit();
  std::vector<double> out(static_cast<std::size_t>(size) * size);
  for (int y = 0; y < size; ++y) {
    const double fy = static_cast<double>(y) / cell;
    const int iy = static_cast<int>(fy);
    const double ty = fy - iy;
    for (int x = 0; x < size; ++x) {
      const double fx = static_cast<double>(x) / cell;
      const int ix = static_cast<int>(fx);
      const double tx = fx - ix;
      const double* row0 = lattice.data() + static_cast<std::size_t>(iy) * grid;
      const double* row1 = row0 + grid;
      const double top = (1.0 - tx) * row0[ix] + tx * row0[ix + 1];
      const double bottom = (1.0 - tx) * row1[ix] + tx * row1[ix + 1];
      out[static_cast<std::size_t>(y) * size + x] =
          (1.0 - ty) * top + ty * bottom;
    }
  }
  return out;
}

}  // namespace

GrayImage make_texture(int size, std::uint64_t seed) {
  if (size < 1)
    throw ArgumentError("texture size must be >= 1, got " +
                        std::to_string(size));
  Rng rng(seed);
  const int coarse_cell = std::max(1, size / 7);
  const int fine_cell = std::max(1, size / 28);
  const auto coarse = value_noise(size, coarse_cell, rng);
  const auto fine = value_noise(size, fine_cell, rng);

  std::vector<double> combined(coarse.size());
  for (std::size_t i = 0; i < combined.size(); ++i)
    combined[i] = 0.65 * coarse[i] + 0.35 * fine[i];
  const auto [lo, hi] = std::minmax_element(combined.begin(), combined.end());
  const double span = *hi > *lo ? *hi - *lo : 1.0;

  GrayImage img(size, size);
  for (std::size_t i = 0; i < combined.size(); ++i) {
    const double stretched = 255.0 * (combined[i] - *lo) / span;
    img.data[i] = static_cast<std::uint8_t>(
        std::clamp(round_half_up(stretched), 0, 255));
  }
  return img;
}

GrayImage add_noise_and_shift(const GrayImage& img, double noise_sigma,
                              int shift, Rng& rng) {
  if (noise_sigma < 0.0)
    throw ArgumentError("noise sigma must be >= 0");
  GrayImage out(img.width, img.height);
  for (std::size_t i = 0; i < img.pixel_count(); ++i) {
    const double v = static_cast<double>(img.data[i]) + shift +
                     (noise_sigma > 0.0 ? rng.normal(noise_sigma) : 0.0);
    out.data[i] =
        static_cast<std::uint8_t>(std::clamp(round_half_up(v), 0, 255));
  }
  return out;
}

std::vector<SynthImage> generate_dataset(const SynthParams& params) {
  if (params.n_subjects < 1 || params.images_per_condition < 1)
    throw ArgumentError("subject and image counts must be >= 1");
  if (params.conditions.empty())
    throw ArgumentError("at least one condition is required");
  if (std::set<Condition>(params.conditions.begin(), params.conditions.end())
          .size() != params.conditions.size())
    throw ArgumentError("conditions must be distinct");
  if (params.subject_blend < 0.0 || params.subject_blend >= 1.0)
    throw ArgumentError("subject_blend must be in [0, 1)");

  const GrayImage shared =
      params.subject_blend > 0.0
          ? make_texture(params.size, mix(params.seed, 0xBA5EULL))
          : GrayImage();

  std::vector<SynthImage> images;
  images.reserve(static_cast<std::size_t>(params.n_subjects) *
                 params.conditions.size() * params.images_per_condition);
  char buf[16];
  for (int s = 0; s < params.n_subjects; ++s) {
    GrayImage texture =
        make_texture(params.size, mix(params.seed, static_cast<std::uint64_t>(s)));
    if (params.subject_blend > 0.0)
      texture = blend_stretch(shared, texture, params.subject_blend);
    std::snprintf(buf, sizeof(buf), "s%03d", s);
    const std::string subject_id(buf);
    for (std::size_t c = 0; c < params.conditions.size(); ++c) {
      const int shift = c == 0 ? 0 : params.brightness_shift;
      for (int i = 0; i < params.images_per_condition; ++i) {
        Rng rng(mix(params.seed,
                    (static_cast<std::uint64_t>(s) << 32) ^
                        (static_cast<std::uint64_t>(c) << 20) ^
                        static_cast<std::uint64_t>(i)));
        std::snprintf(buf, sizeof(buf), "i%04d", i);
        images.push_back({subject_id, buf, params.conditions[c],
                          add_noise_and_shift(texture, params.noise_sigma,
                                              shift, rng)});
      }
    }
  }
  return images;
}

}  // namespace faceid
