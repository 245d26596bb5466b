#pragma once

#include <filesystem>

#include "faceid/image.hpp"

namespace faceid {

/// Decode a PNG or JPEG file (detected from magic bytes) to interleaved RGB.
/// Throws FormatError on unreadable or undecodable input.
RgbImage read_image_rgb(const std::filesystem::path& path);

/// Decode and convert to 8-bit grayscale.
GrayImage read_image_gray(const std::filesystem::path& path);

void write_png_gray(const std::filesystem::path& path, const GrayImage& img);
void write_jpeg_gray(const std::filesystem::path& path, const GrayImage& img,
                     int quality = 95);

}  // namespace faceid
