// Gradient-orientation descriptors: HOG over a fixed cell grid and PHOG over
// a spatial pyramid. Both use central-difference gradients with edge clamp
// and magnitude-weighted soft binning over unsigned orientations [0, 180).

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "descriptor_common.hpp"
#include "faceid/descriptors.hpp"
#include "faceid/error.hpp"

namespace faceid {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;
constexpr double kL2Epsilon = 1e-6;

struct PixelGradient {
  double mag = 0.0;
  double deg = 0.0;  // [0, 180)
};

inline PixelGradient gradient_at(const GrayImage& img, int x, int y) {
  const double gx = static_cast<double>(img.at_clamped(x + 1, y)) -
                    static_cast<double>(img.at_clamped(x - 1, y));
  const double gy = static_cast<double>(img.at_clamped(x, y + 1)) -
                    static_cast<double>(img.at_clamped(x, y - 1));
  PixelGradient g;
  g.mag = std::sqrt(gx * gx + gy * gy);
  double deg = std::atan2(gy, gx) * kRadToDeg;
  if (deg < 0.0) deg += 180.0;
  if (deg >= 180.0) deg -= 180.0;
  g.deg = deg;
  return g;
}

// Linear interpolation between the two nearest bins; bin i is centered at
// i * (180 / bins) degrees and the orientation axis wraps at 180.
inline void soft_bin(const PixelGradient& g, int bins, double bin_width,
                     double* hist) {
  const double pos = g.deg / bin_width;
  const int i0 = static_cast<int>(pos);
  const double frac = pos - i0;
  hist[i0] += g.mag * (1.0 - frac);
  hist[(i0 + 1) % bins] += g.mag * frac;
}

}  // namespace

FeatureVector extract_hog(const GrayImage& img, const DescriptorParams& p,
                          int threads) {
  p.validate();
  const int cell = p.hog_cell;
  if (img.width < cell || img.height < cell)
    throw DimensionError("image " + std::to_string(img.width) + "x" +
                         std::to_string(img.height) +
                         " is smaller than one cell of size " +
                         std::to_string(cell));
  const int bins = p.hog_bins;
  const double bin_width = 180.0 / bins;
  const int cells_x = img.width / cell;
  const int cells_y = img.height / cell;
  std::vector<double> out(static_cast<std::size_t>(bins) * cells_x * cells_y,
                          0.0);
#pragma omp parallel for num_threads(detail::team_size(threads)) schedule(static)
  for (int c = 0; c < cells_x * cells_y; ++c) {
    const int cx = (c % cells_x) * cell;
    const int cy = (c / cells_x) * cell;
    double* hist = out.data() + static_cast<std::size_t>(c) * bins;
    for (int y = cy; y < cy + cell; ++y)
      for (int x = cx; x < cx + cell; ++x)
        soft_bin(gradient_at(img, x, y), bins, bin_width, hist);
    double sumsq = 0.0;
    for (int i = 0; i < bins; ++i) sumsq += hist[i] * hist[i];
    const double inv = 1.0 / std::sqrt(sumsq + kL2Epsilon * kL2Epsilon);
    for (int i = 0; i < bins; ++i) hist[i] *= inv;
  }
  return {DescriptorId::kHog, std::move(out)};
}

FeatureVector extract_phog(const GrayImage& img, const DescriptorParams& p,
                           int threads) {
  p.validate();
  const int levels = p.phog_levels;
  const int deepest = 1 << levels;
  if (deepest > img.width || deepest > img.height)
    throw ArgumentError("pyramid level " + std::to_string(levels) +
                        " needs regions of at least one pixel in a " +
                        std::to_string(img.width) + "x" +
                        std::to_string(img.height) + " image");
  const int bins = p.phog_bins;
  const double bin_width = 180.0 / bins;

  // Flatten (level, region) pairs so one parallel loop covers the pyramid.
  struct Region {
    int x0, x1, y0, y1;
  };
  std::vector<Region> regions;
  for (int l = 0; l <= levels; ++l) {
    const int n = 1 << l;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        regions.push_back({static_cast<int>(static_cast<std::int64_t>(img.width) * j / n),
                           static_cast<int>(static_cast<std::int64_t>(img.width) * (j + 1) / n),
                           static_cast<int>(static_cast<std::int64_t>(img.height) * i / n),
                           static_cast<int>(static_cast<std::int64_t>(img.height) * (i + 1) / n)});
      }
    }
  }

  std::vector<double> out(regions.size() * static_cast<std::size_t>(bins),
                          0.0);
  const int region_count = static_cast<int>(regions.size());
#pragma omp parallel for num_threads(detail::team_size(threads)) schedule(static)
  for (int rix = 0; rix < region_count; ++rix) {
    const Region reg = regions[rix];
    double* hist = out.data() + static_cast<std::size_t>(rix) * bins;
    for (int y = reg.y0; y < reg.y1; ++y)
      for (int x = reg.x0; x < reg.x1; ++x)
        soft_bin(gradient_at(img, x, y), bins, bin_width, hist);
  }

  double total = 0.0;
  for (double v : out) total += v;
  if (total > 0.0)
    for (double& v : out) v /= total;
  return {DescriptorId::kPhog, std::move(out)};
}

}  // namespace faceid
