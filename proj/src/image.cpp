#include "faceid/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "faceid/error.hpp"

namespace faceid {

namespace {

void check_dims(int w, int h) {
  if (w <= 0 || h <= 0)
    throw ArgumentError("image dimensions must be positive, got " +
                        std::to_string(w) + "x" + std::to_string(h));
}

std::uint8_t clamp_intensity(int v) {
  return static_cast<std::uint8_t>(std::clamp(v, 0, 255));
}

}  // namespace

GrayImage::GrayImage(int w, int h, std::uint8_t fill) : width(w), height(h) {
  check_dims(w, h);
  data.assign(static_cast<std::size_t>(w) * h, fill);
}

GrayImage::GrayImage(int w, int h, std::vector<std::uint8_t> pixels)
    : width(w), height(h), data(std::move(pixels)) {
  check_dims(w, h);
  if (data.size() != static_cast<std::size_t>(w) * h)
    throw DimensionError("pixel buffer length " + std::to_string(data.size()) +
                         " does not match " + std::to_string(w) + "x" +
                         std::to_string(h));
}

std::uint8_t GrayImage::at_clamped(int x, int y) const {
  x = std::clamp(x, 0, width - 1);
  y = std::clamp(y, 0, height - 1);
  return at(x, y);
}

RgbImage::RgbImage(int w, int h) : width(w), height(h) {
  check_dims(w, h);
  data.assign(static_cast<std::size_t>(w) * h * 3, 0);
}

RgbImage::RgbImage(int w, int h, std::vector<std::uint8_t> pixels)
    : width(w), height(h), data(std::move(pixels)) {
  check_dims(w, h);
  if (data.size() != static_cast<std::size_t>(w) * h * 3)
    throw DimensionError("rgb buffer length " + std::to_string(data.size()) +
                         " does not match 3x" + std::to_string(w) + "x" +
                         std::to_string(h));
}

GrayImage to_grayscale(const RgbImage& rgb) {
  GrayImage out(rgb.width, rgb.height);
  const std::uint8_t* src = rgb.data.data();
  for (std::size_t i = 0; i < out.pixel_count(); ++i) {
    const double luma =
        0.299 * src[3 * i] + 0.587 * src[3 * i + 1] + 0.114 * src[3 * i + 2];
    out.data[i] = clamp_intensity(round_half_up(luma));
  }
  return out;
}

GrayImage to_grayscale(const GrayImage& r, const GrayImage& g,
                       const GrayImage& b) {
  if (r.width != g.width || r.width != b.width || r.height != g.height ||
      r.height != b.height)
    throw DimensionError("channel dimensions differ");
  GrayImage out(r.width, r.height);
  for (std::size_t i = 0; i < out.pixel_count(); ++i) {
    const double luma =
        0.299 * r.data[i] + 0.587 * g.data[i] + 0.114 * b.data[i];
    out.data[i] = clamp_intensity(round_half_up(luma));
  }
  return out;
}

GrayImage resize_bilinear(const GrayImage& img, int out_w, int out_h) {
  if (out_w <= 0 || out_h <= 0)
    throw ArgumentError("resize target must be positive, got " +
                        std::to_string(out_w) + "x" + std::to_string(out_h));
  GrayImage out(out_w, out_h);
  const double sx = static_cast<double>(img.width) / out_w;
  const double sy = static_cast<double>(img.height) / out_h;
  for (int y = 0; y < out_h; ++y) {
    const double src_y = (y + 0.5) * sy - 0.5;
    const double fy = std::floor(src_y);
    const int y0 = std::clamp(static_cast<int>(fy), 0, img.height - 1);
    const int y1 = std::min(y0 + 1, img.height - 1);
    const double wy = std::clamp(src_y - fy, 0.0, 1.0);
    for (int x = 0; x < out_w; ++x) {
      const double src_x = (x + 0.5) * sx - 0.5;
      const double fx = std::floor(src_x);
      const int x0 = std::clamp(static_cast<int>(fx), 0, img.width - 1);
      const int x1 = std::min(x0 + 1, img.width - 1);
      const double wx = std::clamp(src_x - fx, 0.0, 1.0);
      const double top =
          (1.0 - wx) * img.at(x0, y0) + wx * img.at(x1, y0);
      const double bottom =
          (1.0 - wx) * img.at(x0, y1) + wx * img.at(x1, y1);
      const double value = (1.0 - wy) * top + wy * bottom;
      out.at(x, y) = clamp_intensity(round_half_up(value));
    }
  }
  return out;
}

BlockGrid partition_blocks(const GrayImage& img, int block_size) {
  if (block_size < 1)
    throw ArgumentError("block_size must be >= 1, got " +
                        std::to_string(block_size));
  if (img.width < block_size || img.height < block_size)
    throw DimensionError("image " + std::to_string(img.width) + "x" +
                         std::to_string(img.height) +
                         " is smaller than one block of size " +
                         std::to_string(block_size));
  BlockGrid grid;
  grid.block_size = block_size;
  grid.rows = img.height / block_size;
  grid.cols = img.width / block_size;
  return grid;
}

GrayImage extract_block(const GrayImage& img, const BlockView& view) {
  GrayImage out(view.size, view.size);
  for (int y = 0; y < view.size; ++y)
    for (int x = 0; x < view.size; ++x)
      out.at(x, y) = img.at(view.x0 + x, view.y0 + y);
  return out;
}

GrayImage gaussian_blur(const GrayImage& img, double sigma) {
  if (sigma < 0.0)
    throw ArgumentError("sigma must be >= 0, got " + std::to_string(sigma));
  if (sigma == 0.0) return img;

  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    kernel[i + radius] = std::exp(-0.5 * i * i / (sigma * sigma));
    sum += kernel[i + radius];
  }
  for (auto& k : kernel) k /= sum;

  // Horizontal pass in full precision, vertical pass, then one rounding.
  std::vector<double> tmp(img.pixel_count());
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i)
        acc += kernel[i + radius] * img.at_clamped(x + i, y);
      tmp[static_cast<std::size_t>(y) * img.width + x] = acc;
    }
  }
  GrayImage out(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        const int yy = std::clamp(y + i, 0, img.height - 1);
        acc += kernel[i + radius] *
               tmp[static_cast<std::size_t>(yy) * img.width + x];
      }
      out.at(x, y) = clamp_intensity(round_half_up(acc));
    }
  }
  return out;
}

}  // namespace faceid
