#include <numeric>

#include "doctest.h"
#include "faceid/error.hpp"
#include "faceid/synth.hpp"

using namespace faceid;

namespace {

double mean_of(const GrayImage& img) {
  return std::accumulate(img.data.begin(), img.data.end(), 0.0) /
         static_cast<double>(img.pixel_count());
}

}  // namespace

TEST_CASE("make_texture: deterministic, full range, seed-sensitive") {
  const GrayImage a = make_texture(64, 9);
  const GrayImage b = make_texture(64, 9);
  CHECK(a == b);
  const GrayImage c = make_texture(64, 10);
  CHECK(a.data != c.data);

  const auto [lo, hi] = std::minmax_element(a.data.begin(), a.data.end());
  CHECK(*lo == 0);
  CHECK(*hi == 255);
}

TEST_CASE("add_noise_and_shift: shift moves the mean, stays in range") {
  const GrayImage texture = make_texture(64, 11);
  Rng rng1(1), rng2(1);
  const GrayImage plain = add_noise_and_shift(texture, 8.0, 0, rng1);
  const GrayImage shifted = add_noise_and_shift(texture, 8.0, 40, rng2);
  CHECK(mean_of(shifted) > mean_of(plain) + 20.0);
  Rng rng3(2);
  CHECK_THROWS_AS(add_noise_and_shift(texture, -1.0, 0, rng3), ArgumentError);
}

TEST_CASE("generate_dataset: layout, determinism, conditions") {
  SynthParams params;
  params.n_subjects = 3;
  params.images_per_condition = 4;
  params.size = 48;
  params.seed = 77;
  const auto images = generate_dataset(params);
  REQUIRE(images.size() == 3u * 2u * 4u);

  const auto again = generate_dataset(params);
  for (std::size_t i = 0; i < images.size(); ++i) {
    CHECK(images[i].subject_id == again[i].subject_id);
    CHECK(images[i].image_id == again[i].image_id);
    CHECK(images[i].condition == again[i].condition);
    CHECK(images[i].image == again[i].image);
  }

  // Day images carry the brightness shift over the same base textures.
  double office_mean = 0.0, day_mean = 0.0;
  int office_n = 0, day_n = 0;
  for (const auto& si : images) {
    if (si.condition == Condition::kOffice) {
      office_mean += mean_of(si.image);
      ++office_n;
    } else {
      day_mean += mean_of(si.image);
      ++day_n;
    }
  }
  REQUIRE(office_n == 12);
  REQUIRE(day_n == 12);
  CHECK(day_mean / day_n > office_mean / office_n + 10.0);

  // Distinct subjects get distinct textures.
  CHECK(images[0].image.data != images[8].image.data);
}

TEST_CASE("generate_dataset: parameter validation") {
  SynthParams params;
  params.n_subjects = 0;
  CHECK_THROWS_AS(generate_dataset(params), ArgumentError);
  params = SynthParams{};
  params.conditions = {Condition::kOffice, Condition::kOffice};
  CHECK_THROWS_AS(generate_dataset(params), ArgumentError);
  params = SynthParams{};
  params.conditions.clear();
  CHECK_THROWS_AS(generate_dataset(params), ArgumentError);
}
