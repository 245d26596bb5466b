// LBP-family kernels: LBP, mLBP, LTP code maps and their block histograms.

#include <algorithm>
#include <array>
#include <string>

#include "descriptor_common.hpp"
#include "faceid/descriptors.hpp"
#include "faceid/error.hpp"

namespace faceid {

namespace {

void check_window(int window) {
  if (window < 3 || window % 2 == 0)
    throw ArgumentError("window must be odd and >= 3, got " +
                        std::to_string(window));
}

// Neighbor ring clockwise from the top-left window corner; the first entry
// fills the most significant code bit.
struct Ring {
  std::array<int, 8> dx;
  std::array<int, 8> dy;
};

Ring make_ring(int radius) {
  const int r = radius;
  return {{{-r, 0, r, r, r, 0, -r, -r}}, {{-r, -r, -r, 0, r, r, r, 0}}};
}

}  // namespace

namespace detail {

std::vector<double> block_code_histograms(const GrayImage& img,
                                          const BlockGrid& grid,
                                          const std::vector<std::uint8_t>& codes,
                                          int margin, int threads) {
  std::vector<double> out(static_cast<std::size_t>(grid.count()) * kCodeBins,
                          0.0);
  const int x_lo = margin, x_hi = img.width - margin;
  const int y_lo = margin, y_hi = img.height - margin;
#pragma omp parallel for num_threads(team_size(threads)) schedule(static)
  for (int b = 0; b < grid.count(); ++b) {
    const BlockView view = grid.block(b / grid.cols, b % grid.cols);
    std::array<int, kCodeBins> hist{};
    int count = 0;
    const int by0 = std::max(view.y0, y_lo);
    const int by1 = std::min(view.y0 + view.size, y_hi);
    const int bx0 = std::max(view.x0, x_lo);
    const int bx1 = std::min(view.x0 + view.size, x_hi);
    for (int y = by0; y < by1; ++y) {
      const std::uint8_t* row = codes.data() + static_cast<std::size_t>(y) * img.width;
      for (int x = bx0; x < bx1; ++x) {
        ++hist[row[x]];
        ++count;
      }
    }
    double* dst = out.data() + static_cast<std::size_t>(b) * kCodeBins;
    if (count > 0) {
      for (int i = 0; i < kCodeBins; ++i)
        dst[i] = static_cast<double>(hist[i]) / count;
    }
  }
  return out;
}

}  // namespace detail

std::vector<std::uint8_t> lbp_code_map(const GrayImage& img, int window,
                                       int threads) {
  check_window(window);
  const int r = code_margin(window);
  const Ring ring = make_ring(r);
  std::vector<std::uint8_t> codes(img.pixel_count(), 0);
  const std::uint8_t* px = img.data.data();
  const int w = img.width;
#pragma omp parallel for num_threads(detail::team_size(threads)) schedule(static)
  for (int y = r; y < img.height - r; ++y) {
    for (int x = r; x < w - r; ++x) {
      const std::uint8_t center = px[static_cast<std::size_t>(y) * w + x];
      unsigned code = 0;
      for (int i = 0; i < 8; ++i) {
        code <<= 1;
        code |= px[static_cast<std::size_t>(y + ring.dy[i]) * w + x +
                   ring.dx[i]] >= center;
      }
      codes[static_cast<std::size_t>(y) * w + x] =
          static_cast<std::uint8_t>(code);
    }
  }
  return codes;
}

std::vector<std::uint8_t> mlbp_code_map(const GrayImage& img, int window,
                                        int threads) {
  check_window(window);
  const int r = code_margin(window);
  const Ring ring = make_ring(r);
  std::vector<std::uint8_t> codes(img.pixel_count(), 0);
  const std::uint8_t* px = img.data.data();
  const int w = img.width;
#pragma omp parallel for num_threads(detail::team_size(threads)) schedule(static)
  for (int y = r; y < img.height - r; ++y) {
    for (int x = r; x < w - r; ++x) {
      long sum = 0;
      for (int wy = y - r; wy <= y + r; ++wy)
        for (int wx = x - r; wx <= x + r; ++wx)
          sum += px[static_cast<std::size_t>(wy) * w + wx];
      // Exact for constant windows: sum == window^2 * c divides evenly, so
      // the equality comparisons below behave like the integer case.
      const double mean = static_cast<double>(sum) /
                          (static_cast<double>(window) * window);
      unsigned code = 0;
      for (int i = 0; i < 8; ++i) {
        code <<= 1;
        code |= static_cast<double>(
                    px[static_cast<std::size_t>(y + ring.dy[i]) * w + x +
                       ring.dx[i]]) >= mean;
      }
      codes[static_cast<std::size_t>(y) * w + x] =
          static_cast<std::uint8_t>(code);
    }
  }
  return codes;
}

LtpCodeMaps ltp_code_maps(const GrayImage& img, int window, int threshold,
                          int threads) {
  check_window(window);
  if (threshold < 0)
    throw ArgumentError("ltp_threshold must be >= 0, got " +
                        std::to_string(threshold));
  const int r = code_margin(window);
  const Ring ring = make_ring(r);
  LtpCodeMaps maps;
  maps.upper.assign(img.pixel_count(), 0);
  maps.lower.assign(img.pixel_count(), 0);
  const std::uint8_t* px = img.data.data();
  const int w = img.width;
#pragma omp parallel for num_threads(detail::team_size(threads)) schedule(static)
  for (int y = r; y < img.height - r; ++y) {
    for (int x = r; x < w - r; ++x) {
      const int center = px[static_cast<std::size_t>(y) * w + x];
      unsigned upper = 0, lower = 0;
      for (int i = 0; i < 8; ++i) {
        upper <<= 1;
        lower <<= 1;
        const int neighbor = px[static_cast<std::size_t>(y + ring.dy[i]) * w +
                                x + ring.dx[i]];
        // Ternary rule; at threshold 0 equality resolves to the upper
        // pattern so LTP(0) upper reduces to LBP.
        if (neighbor >= center + threshold)
          upper |= 1;
        else if (neighbor <= center - threshold)
          lower |= 1;
      }
      maps.upper[static_cast<std::size_t>(y) * w + x] =
          static_cast<std::uint8_t>(upper);
      maps.lower[static_cast<std::size_t>(y) * w + x] =
          static_cast<std::uint8_t>(lower);
    }
  }
  return maps;
}

FeatureVector extract_lbp(const GrayImage& img, const DescriptorParams& p,
                          int threads) {
  p.validate();
  const BlockGrid grid = partition_blocks(img, p.block_size);
  const auto codes = lbp_code_map(img, p.window, threads);
  return {DescriptorId::kLbp,
          detail::block_code_histograms(img, grid, codes,
                                        code_margin(p.window), threads)};
}

FeatureVector extract_mlbp(const GrayImage& img, const DescriptorParams& p,
                           int threads) {
  p.validate();
  const BlockGrid grid = partition_blocks(img, p.block_size);
  const auto codes = mlbp_code_map(img, p.window, threads);
  return {DescriptorId::kMlbp,
          detail::block_code_histograms(img, grid, codes,
                                        code_margin(p.window), threads)};
}

FeatureVector extract_ltp(const GrayImage& img, const DescriptorParams& p,
                          int threads) {
  p.validate();
  const BlockGrid grid = partition_blocks(img, p.block_size);
  const auto maps = ltp_code_maps(img, p.window, p.ltp_threshold, threads);
  const int margin = code_margin(p.window);
  auto upper = detail::block_code_histograms(img, grid, maps.upper, margin,
                                             threads);
  const auto lower = detail::block_code_histograms(img, grid, maps.lower,
                                                   margin, threads);
  upper.insert(upper.end(), lower.begin(), lower.end());
  return {DescriptorId::kLtp, std::move(upper)};
}

}  // namespace faceid
