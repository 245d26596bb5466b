#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "faceid/image.hpp"

namespace faceid {

enum class DescriptorId { kLbp, kMlbp, kLtp, kLpq, kHog, kPhog, kEmbedding };

const char* to_string(DescriptorId id);
std::optional<DescriptorId> descriptor_from_string(std::string_view name);

/// The six extractable descriptors, in canonical order.
const std::vector<DescriptorId>& extractable_descriptors();

/// Real-valued descriptor or embedding with its producing descriptor id.
struct FeatureVector {
  DescriptorId id = DescriptorId::kEmbedding;
  std::vector<double> values;

  int dim() const { return static_cast<int>(values.size()); }
};

struct DescriptorParams {
  int block_size = 32;     // histogram block tiling (LBP family, LPQ)
  int window = 3;          // odd; neighborhood for LBP/mLBP/LTP
  int ltp_threshold = 5;   // intensity units
  int lpq_window = 3;      // odd; STFT window for LPQ
  int hog_cell = 8;
  int hog_bins = 9;        // unsigned orientation, [0, 180)
  int phog_levels = 3;     // pyramid levels 0..phog_levels
  int phog_bins = 8;

  void validate() const;  // throws ArgumentError
};

// Block-histogram extractors. Codes are computed at interior pixels only
// (pixels whose full window fits inside the image); blocks are defined on
// the full image; each block histogram is L1-normalized over its own code
// count. `threads` sizes the OpenMP team; 0 means the library default.

FeatureVector extract_lbp(const GrayImage& img, const DescriptorParams& p,
                          int threads = 0);
FeatureVector extract_mlbp(const GrayImage& img, const DescriptorParams& p,
                           int threads = 0);
FeatureVector extract_ltp(const GrayImage& img, const DescriptorParams& p,
                          int threads = 0);
FeatureVector extract_lpq(const GrayImage& img, const DescriptorParams& p,
                          int threads = 0);
FeatureVector extract_hog(const GrayImage& img, const DescriptorParams& p,
                          int threads = 0);
FeatureVector extract_phog(const GrayImage& img, const DescriptorParams& p,
                           int threads = 0);

/// Dispatch by descriptor id. kEmbedding is not extractable (ArgumentError).
FeatureVector extract(DescriptorId id, const GrayImage& img,
                      const DescriptorParams& p, int threads = 0);

/// Interior margin for a window size: codes exist for x,y in [m, dim - m).
inline int code_margin(int window) { return (window - 1) / 2; }

// Per-pixel code maps, exposed for tests and diagnostics. Entries at margin
// positions are 0 and carry no code; consult code_margin() for validity.
std::vector<std::uint8_t> lbp_code_map(const GrayImage& img, int window,
                                       int threads = 0);
std::vector<std::uint8_t> mlbp_code_map(const GrayImage& img, int window,
                                        int threads = 0);
struct LtpCodeMaps {
  std::vector<std::uint8_t> upper;
  std::vector<std::uint8_t> lower;
};
LtpCodeMaps ltp_code_maps(const GrayImage& img, int window, int threshold,
                          int threads = 0);
std::vector<std::uint8_t> lpq_code_map(const GrayImage& img, int lpq_window,
                                       int threads = 0);

}  // namespace faceid
