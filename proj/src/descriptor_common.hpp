#pragma once

#include <cstdint>
#include <vector>

#include <omp.h>

#include "faceid/image.hpp"

namespace faceid::detail {

inline int team_size(int threads) {
  return threads > 0 ? threads : omp_get_max_threads();
}

inline constexpr int kCodeBins = 256;

// Concatenated per-block 256-bin histograms of a code map. Codes exist only
// at interior pixels (margin from the window size); each block histogram is
// L1-normalized over its own code count. Blocks with no coded pixel stay
// all-zero.
std::vector<double> block_code_histograms(const GrayImage& img,
                                          const BlockGrid& grid,
                                          const std::vector<std::uint8_t>& codes,
                                          int margin, int threads);

}  // namespace faceid::detail
