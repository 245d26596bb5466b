#include <vector>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "faceid/codec.hpp"
#include "faceid/error.hpp"
#include "faceid/synth.hpp"

using namespace faceid;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "faceid_codec_tests";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("png: grayscale write/read round-trips exactly") {
  const GrayImage img = make_texture(57, 3);
  const fs::path path = temp_dir() / "gray.png";
  write_png_gray(path, img);
  const GrayImage back = read_image_gray(path);
  CHECK(back == img);
}

TEST_CASE("jpeg: high-quality write/read is close, not exact") {
  const GrayImage img = make_texture(64, 4);
  const fs::path path = temp_dir() / "gray.jpg";
  write_jpeg_gray(path, img, 95);
  const GrayImage back = read_image_gray(path);
  REQUIRE(back.width == img.width);
  REQUIRE(back.height == img.height);
  double err = 0.0;
  for (std::size_t i = 0; i < img.pixel_count(); ++i)
    err += std::abs(static_cast<int>(back.data[i]) -
                    static_cast<int>(img.data[i]));
  CHECK(err / static_cast<double>(img.pixel_count()) < 6.0);
}

TEST_CASE("png: color, palette, alpha and 16-bit variants decode") {
  const fs::path data = FACEID_TEST_DATA_DIR;
  const std::vector<std::uint8_t> expected_luma = {76, 150, 29,  255,
                                                   0,  128, 226, 18};
  for (const char* name : {"color_rgb.png", "color_palette.png",
                           "color_rgba.png"}) {
    CAPTURE(name);
    const GrayImage img = read_image_gray(data / name);
    REQUIRE(img.width == 4);
    REQUIRE(img.height == 2);
    CHECK(img.data == expected_luma);
  }
  const RgbImage rgb = read_image_rgb(data / "color_rgb.png");
  CHECK(rgb.data[0] == 255);  // red channel of the first pixel
  CHECK(rgb.data[1] == 0);
  CHECK(rgb.data[2] == 0);

  const GrayImage g16 = read_image_gray(data / "gray16.png");
  REQUIRE(g16.width == 2);
  CHECK(g16.data == std::vector<std::uint8_t>{0, 255, 128, 1});
}

TEST_CASE("decoder rejects garbage and missing files") {
  const fs::path garbage = temp_dir() / "garbage.png";
  std::ofstream(garbage, std::ios::binary) << "this is not an image at all";
  CHECK_THROWS_AS(read_image_rgb(garbage), FormatError);

  const fs::path truncated = temp_dir() / "trunc.png";
  {
    const GrayImage img = make_texture(32, 5);
    write_png_gray(truncated, img);
    fs::resize_file(truncated, 40);
  }
  CHECK_THROWS_AS(read_image_rgb(truncated), FormatError);

  CHECK_THROWS_AS(read_image_rgb(temp_dir() / "missing.png"), FormatError);
}
