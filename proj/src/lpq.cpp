// Local phase quantization: short-term Fourier transform over a small window
// at four low frequencies, sign-quantized into an 8-bit code per pixel.

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "descriptor_common.hpp"
#include "faceid/descriptors.hpp"
#include "faceid/error.hpp"

namespace faceid {

namespace {

// Per-window-cell weights for the four frequency pairs u1=(a,0), u2=(0,a),
// u3=(a,a), u4=(a,-a) with a = 1/M, cells row-major over (dy, dx).
struct LpqWeights {
  int window = 0;
  std::vector<std::array<double, 4>> re;
  std::vector<std::array<double, 4>> im;
};

LpqWeights make_weights(int window) {
  const int r = (window - 1) / 2;
  const double a = 1.0 / window;
  const double tau = 2.0 * std::numbers::pi;
  LpqWeights w;
  w.window = window;
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      const double ang1 = -tau * a * dx;
      const double ang2 = -tau * a * dy;
      const double ang3 = -tau * a * (dx + dy);
      const double ang4 = -tau * a * (dx - dy);
      w.re.push_back({std::cos(ang1), std::cos(ang2), std::cos(ang3),
                      std::cos(ang4)});
      w.im.push_back({std::sin(ang1), std::sin(ang2), std::sin(ang3),
                      std::sin(ang4)});
    }
  }
  return w;
}

}  // namespace

std::vector<std::uint8_t> lpq_code_map(const GrayImage& img, int lpq_window,
                                       int threads) {
  if (lpq_window < 3 || lpq_window % 2 == 0)
    throw ArgumentError("lpq_window must be odd and >= 3, got " +
                        std::to_string(lpq_window));
  const int r = (lpq_window - 1) / 2;
  const int cells = lpq_window * lpq_window;
  const LpqWeights weights = make_weights(lpq_window);
  std::vector<std::uint8_t> codes(img.pixel_count(), 0);
  const std::uint8_t* px = img.data.data();
  const int w = img.width;
#pragma omp parallel for num_threads(detail::team_size(threads)) schedule(static)
  for (int y = r; y < img.height - r; ++y) {
    for (int x = r; x < w - r; ++x) {
      // Removing the window mean leaves the nonzero-frequency coefficients
      // mathematically unchanged and makes a constant window quantize to
      // exact zeros (all sign bits 1).
      long sum = 0;
      for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx)
          sum += px[static_cast<std::size_t>(y + dy) * w + x + dx];
      const double mean = static_cast<double>(sum) / cells;

      std::array<double, 4> acc_re{}, acc_im{};
      int k = 0;
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx, ++k) {
          const double v =
              static_cast<double>(
                  px[static_cast<std::size_t>(y + dy) * w + x + dx]) -
              mean;
          for (int f = 0; f < 4; ++f) {
            acc_re[f] += v * weights.re[k][f];
            acc_im[f] += v * weights.im[k][f];
          }
        }
      }
      unsigned code = 0;
      for (int f = 0; f < 4; ++f) {
        code |= (acc_re[f] >= 0.0 ? 1u : 0u) << f;
        code |= (acc_im[f] >= 0.0 ? 1u : 0u) << (4 + f);
      }
      codes[static_cast<std::size_t>(y) * w + x] =
          static_cast<std::uint8_t>(code);
    }
  }
  return codes;
}

FeatureVector extract_lpq(const GrayImage& img, const DescriptorParams& p,
                          int threads) {
  p.validate();
  const BlockGrid grid = partition_blocks(img, p.block_size);
  const auto codes = lpq_code_map(img, p.lpq_window, threads);
  return {DescriptorId::kLpq,
          detail::block_code_histograms(img, grid, codes,
                                        (p.lpq_window - 1) / 2, threads)};
}

}  // namespace faceid
