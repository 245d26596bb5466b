#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace faceid {

/// 8-bit single-channel raster, row-major. The input to every descriptor.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;  // length == width * height

  GrayImage() = default;
  GrayImage(int w, int h, std::uint8_t fill = 0);
  GrayImage(int w, int h, std::vector<std::uint8_t> pixels);

  std::uint8_t at(int x, int y) const {
    return data[static_cast<std::size_t>(y) * width + x];
  }
  std::uint8_t& at(int x, int y) {
    return data[static_cast<std::size_t>(y) * width + x];
  }
  /// Fetch with coordinates clamped to the image border.
  std::uint8_t at_clamped(int x, int y) const;

  std::size_t pixel_count() const { return data.size(); }
  bool operator==(const GrayImage&) const = default;
};

/// Interleaved 8-bit RGB raster.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;  // length == 3 * width * height, RGBRGB...

  RgbImage() = default;
  RgbImage(int w, int h);
  RgbImage(int w, int h, std::vector<std::uint8_t> pixels);
};

/// One tile of a block partition: the square [x0, x0+size) x [y0, y0+size).
struct BlockView {
  int x0 = 0;
  int y0 = 0;
  int size = 0;
};

/// Non-overlapping block tiling from the top-left corner. Trailing pixels
/// that do not fill a block are discarded.
struct BlockGrid {
  int block_size = 0;
  int rows = 0;
  int cols = 0;

  int count() const { return rows * cols; }
  BlockView block(int r, int c) const {
    return {c * block_size, r * block_size, block_size};
  }
};

/// ITU-R BT.601 luma: round(0.299 R + 0.587 G + 0.114 B), clamped to [0,255].
GrayImage to_grayscale(const RgbImage& rgb);
GrayImage to_grayscale(const GrayImage& r, const GrayImage& g,
                       const GrayImage& b);

/// Bilinear resize with edge clamping; intensities rounded half-up.
GrayImage resize_bilinear(const GrayImage& img, int out_w, int out_h);

BlockGrid partition_blocks(const GrayImage& img, int block_size);

/// Copy of one block's pixels (testing / inspection helper).
GrayImage extract_block(const GrayImage& img, const BlockView& view);

/// Separable Gaussian blur, kernel radius ceil(3*sigma), edge-clamped.
/// sigma == 0 returns the input unchanged.
GrayImage gaussian_blur(const GrayImage& img, double sigma);

/// The toolkit-wide intensity rounding rule.
inline int round_half_up(double v) {
  return static_cast<int>(std::floor(v + 0.5));
}

}  // namespace faceid
