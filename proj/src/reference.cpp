// Serial reference descriptors: one translation unit of straight loops with
// no OpenMP, no precomputed tables and no shared kernel machinery. The
// floating-point expressions (LPQ angles, gradient math) are kept textually
// identical to the production kernels so sign quantization and accumulation
// agree bit-for-bit; only the code structure differs.

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "faceid/error.hpp"
#include "faceid/reference.hpp"

namespace faceid::reference {

namespace {

constexpr int kBins = 256;

void require_window(int window) {
  if (window < 3 || window % 2 == 0)
    throw ArgumentError("window must be odd and >= 3, got " +
                        std::to_string(window));
}

bool in_interior(const GrayImage& img, int x, int y, int margin) {
  return x >= margin && y >= margin && x < img.width - margin &&
         y < img.height - margin;
}

// Clockwise ring from the top-left corner, most significant bit first.
int neighbor(const GrayImage& img, int x, int y, int r, int i) {
  static constexpr int kDx[8] = {-1, 0, 1, 1, 1, 0, -1, -1};
  static constexpr int kDy[8] = {-1, -1, -1, 0, 1, 1, 1, 0};
  return img.at(x + kDx[i] * r, y + kDy[i] * r);
}

std::uint8_t lbp_code(const GrayImage& img, int x, int y, int r) {
  const int center = img.at(x, y);
  unsigned code = 0;
  for (int i = 0; i < 8; ++i)
    code = (code << 1) | (neighbor(img, x, y, r, i) >= center ? 1u : 0u);
  return static_cast<std::uint8_t>(code);
}

std::uint8_t mlbp_code(const GrayImage& img, int x, int y, int r,
                       int window) {
  long sum = 0;
  for (int wy = y - r; wy <= y + r; ++wy)
    for (int wx = x - r; wx <= x + r; ++wx) sum += img.at(wx, wy);
  const double mean = static_cast<double>(sum) /
                      (static_cast<double>(window) * window);
  unsigned code = 0;
  for (int i = 0; i < 8; ++i)
    code = (code << 1) |
           (static_cast<double>(neighbor(img, x, y, r, i)) >= mean ? 1u : 0u);
  return static_cast<std::uint8_t>(code);
}

void ltp_codes(const GrayImage& img, int x, int y, int r, int t,
               std::uint8_t& upper_out, std::uint8_t& lower_out) {
  const int center = img.at(x, y);
  unsigned upper = 0, lower = 0;
  for (int i = 0; i < 8; ++i) {
    upper <<= 1;
    lower <<= 1;
    const int n = neighbor(img, x, y, r, i);
    if (n >= center + t)
      upper |= 1;
    else if (n <= center - t)
      lower |= 1;
  }
  upper_out = static_cast<std::uint8_t>(upper);
  lower_out = static_cast<std::uint8_t>(lower);
}

std::uint8_t lpq_code(const GrayImage& img, int x, int y, int window) {
  const int r = (window - 1) / 2;
  const double a = 1.0 / window;
  const double tau = 2.0 * std::numbers::pi;
  long sum = 0;
  for (int dy = -r; dy <= r; ++dy)
    for (int dx = -r; dx <= r; ++dx) sum += img.at(x + dx, y + dy);
  const double mean = static_cast<double>(sum) / (window * window);

  std::array<double, 4> acc_re{}, acc_im{};
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      const double v = static_cast<double>(img.at(x + dx, y + dy)) - mean;
      const double ang[4] = {-tau * a * dx, -tau * a * dy,
                             -tau * a * (dx + dy), -tau * a * (dx - dy)};
      for (int f = 0; f < 4; ++f) {
        acc_re[f] += v * std::cos(ang[f]);
        acc_im[f] += v * std::sin(ang[f]);
      }
    }
  }
  unsigned code = 0;
  for (int f = 0; f < 4; ++f) {
    code |= (acc_re[f] >= 0.0 ? 1u : 0u) << f;
    code |= (acc_im[f] >= 0.0 ? 1u : 0u) << (4 + f);
  }
  return static_cast<std::uint8_t>(code);
}

// Serial block histogramming over a per-pixel code function.
template <typename CodeFn>
std::vector<double> block_histograms(const GrayImage& img, int block_size,
                                     int margin, CodeFn code_at) {
  const int rows = img.height / block_size;
  const int cols = img.width / block_size;
  if (rows < 1 || cols < 1)
    throw DimensionError("image is smaller than one block");
  std::vector<double> out(static_cast<std::size_t>(rows) * cols * kBins, 0.0);
  for (int br = 0; br < rows; ++br) {
    for (int bc = 0; bc < cols; ++bc) {
      std::array<int, kBins> hist{};
      int count = 0;
      for (int y = br * block_size; y < (br + 1) * block_size; ++y) {
        for (int x = bc * block_size; x < (bc + 1) * block_size; ++x) {
          if (!in_interior(img, x, y, margin)) continue;
          ++hist[code_at(x, y)];
          ++count;
        }
      }
      double* dst =
          out.data() + (static_cast<std::size_t>(br) * cols + bc) * kBins;
      if (count > 0)
        for (int i = 0; i < kBins; ++i)
          dst[i] = static_cast<double>(hist[i]) / count;
    }
  }
  return out;
}

double grad_x(const GrayImage& img, int x, int y) {
  return static_cast<double>(img.at_clamped(x + 1, y)) -
         static_cast<double>(img.at_clamped(x - 1, y));
}

double grad_y(const GrayImage& img, int x, int y) {
  return static_cast<double>(img.at_clamped(x, y + 1)) -
         static_cast<double>(img.at_clamped(x, y - 1));
}

void orientation_bin(const GrayImage& img, int x, int y, int bins,
                     double* hist) {
  const double gx = grad_x(img, x, y);
  const double gy = grad_y(img, x, y);
  const double mag = std::sqrt(gx * gx + gy * gy);
  double deg = std::atan2(gy, gx) * (180.0 / std::numbers::pi);
  if (deg < 0.0) deg += 180.0;
  if (deg >= 180.0) deg -= 180.0;
  const double pos = deg / (180.0 / bins);
  const int i0 = static_cast<int>(pos);
  const double frac = pos - i0;
  hist[i0] += mag * (1.0 - frac);
  hist[(i0 + 1) % bins] += mag * frac;
}

}  // namespace

FeatureVector extract_lbp(const GrayImage& img, const DescriptorParams& p) {
  p.validate();
  require_window(p.window);
  const int r = (p.window - 1) / 2;
  auto values = block_histograms(
      img, p.block_size, r,
      [&](int x, int y) { return lbp_code(img, x, y, r); });
  return {DescriptorId::kLbp, std::move(values)};
}

FeatureVector extract_mlbp(const GrayImage& img, const DescriptorParams& p) {
  p.validate();
  const int r = (p.window - 1) / 2;
  auto values = block_histograms(
      img, p.block_size, r,
      [&](int x, int y) { return mlbp_code(img, x, y, r, p.window); });
  return {DescriptorId::kMlbp, std::move(values)};
}

FeatureVector extract_ltp(const GrayImage& img, const DescriptorParams& p) {
  p.validate();
  const int r = (p.window - 1) / 2;
  auto upper = block_histograms(img, p.block_size, r, [&](int x, int y) {
    std::uint8_t u, l;
    ltp_codes(img, x, y, r, p.ltp_threshold, u, l);
    return u;
  });
  auto lower = block_histograms(img, p.block_size, r, [&](int x, int y) {
    std::uint8_t u, l;
    ltp_codes(img, x, y, r, p.ltp_threshold, u, l);
    return l;
  });
  upper.insert(upper.end(), lower.begin(), lower.end());
  return {DescriptorId::kLtp, std::move(upper)};
}

FeatureVector extract_lpq(const GrayImage& img, const DescriptorParams& p) {
  p.validate();
  const int r = (p.lpq_window - 1) / 2;
  auto values = block_histograms(
      img, p.block_size, r,
      [&](int x, int y) { return lpq_code(img, x, y, p.lpq_window); });
  return {DescriptorId::kLpq, std::move(values)};
}

FeatureVector extract_hog(const GrayImage& img, const DescriptorParams& p) {
  p.validate();
  if (img.width < p.hog_cell || img.height < p.hog_cell)
    throw DimensionError("image is smaller than one cell");
  const int cells_x = img.width / p.hog_cell;
  const int cells_y = img.height / p.hog_cell;
  std::vector<double> out(
      static_cast<std::size_t>(p.hog_bins) * cells_x * cells_y, 0.0);
  for (int cy = 0; cy < cells_y; ++cy) {
    for (int cx = 0; cx < cells_x; ++cx) {
      double* hist =
          out.data() +
          (static_cast<std::size_t>(cy) * cells_x + cx) * p.hog_bins;
      for (int y = cy * p.hog_cell; y < (cy + 1) * p.hog_cell; ++y)
        for (int x = cx * p.hog_cell; x < (cx + 1) * p.hog_cell; ++x)
          orientation_bin(img, x, y, p.hog_bins, hist);
      double sumsq = 0.0;
      for (int i = 0; i < p.hog_bins; ++i) sumsq += hist[i] * hist[i];
      const double inv = 1.0 / std::sqrt(sumsq + 1e-6 * 1e-6);
      for (int i = 0; i < p.hog_bins; ++i) hist[i] *= inv;
    }
  }
  return {DescriptorId::kHog, std::move(out)};
}

FeatureVector extract_phog(const GrayImage& img, const DescriptorParams& p) {
  p.validate();
  if ((1 << p.phog_levels) > img.width || (1 << p.phog_levels) > img.height)
    throw ArgumentError("deepest pyramid level exceeds image size");
  std::vector<double> out;
  for (int l = 0; l <= p.phog_levels; ++l) {
    const int n = 1 << l;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        std::vector<double> hist(p.phog_bins, 0.0);
        const int x0 = static_cast<int>(static_cast<std::int64_t>(img.width) * j / n);
        const int x1 = static_cast<int>(static_cast<std::int64_t>(img.width) * (j + 1) / n);
        const int y0 = static_cast<int>(static_cast<std::int64_t>(img.height) * i / n);
        const int y1 = static_cast<int>(static_cast<std::int64_t>(img.height) * (i + 1) / n);
        for (int y = y0; y < y1; ++y)
          for (int x = x0; x < x1; ++x)
            orientation_bin(img, x, y, p.phog_bins, hist.data());
        out.insert(out.end(), hist.begin(), hist.end());
      }
    }
  }
  double total = 0.0;
  for (double v : out) total += v;
  if (total > 0.0)
    for (double& v : out) v /= total;
  return {DescriptorId::kPhog, std::move(out)};
}

FeatureVector extract(DescriptorId id, const GrayImage& img,
                      const DescriptorParams& p) {
  switch (id) {
    case DescriptorId::kLbp: return reference::extract_lbp(img, p);
    case DescriptorId::kMlbp: return reference::extract_mlbp(img, p);
    case DescriptorId::kLtp: return reference::extract_ltp(img, p);
    case DescriptorId::kLpq: return reference::extract_lpq(img, p);
    case DescriptorId::kHog: return reference::extract_hog(img, p);
    case DescriptorId::kPhog: return reference::extract_phog(img, p);
    case DescriptorId::kEmbedding: break;
  }
  throw ArgumentError("EMBEDDING is not an extractable descriptor");
}

}  // namespace faceid::reference
