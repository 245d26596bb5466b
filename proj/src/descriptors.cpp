#include "faceid/descriptors.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "faceid/error.hpp"

namespace faceid {

const char* to_string(DescriptorId id) {
  switch (id) {
    case DescriptorId::kLbp: return "LBP";
    case DescriptorId::kMlbp: return "mLBP";
    case DescriptorId::kLtp: return "LTP";
    case DescriptorId::kLpq: return "LPQ";
    case DescriptorId::kHog: return "HOG";
    case DescriptorId::kPhog: return "PHOG";
    case DescriptorId::kEmbedding: return "EMBEDDING";
  }
  return "?";
}

std::optional<DescriptorId> descriptor_from_string(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "lbp") return DescriptorId::kLbp;
  if (lower == "mlbp") return DescriptorId::kMlbp;
  if (lower == "ltp") return DescriptorId::kLtp;
  if (lower == "lpq") return DescriptorId::kLpq;
  if (lower == "hog") return DescriptorId::kHog;
  if (lower == "phog") return DescriptorId::kPhog;
  if (lower == "embedding") return DescriptorId::kEmbedding;
  return std::nullopt;
}

const std::vector<DescriptorId>& extractable_descriptors() {
  static const std::vector<DescriptorId> ids = {
      DescriptorId::kLbp, DescriptorId::kMlbp, DescriptorId::kLtp,
      DescriptorId::kLpq, DescriptorId::kHog,  DescriptorId::kPhog};
  return ids;
}

void DescriptorParams::validate() const {
  auto odd_window = [](int v, const char* name) {
    if (v < 3 || v % 2 == 0)
      throw ArgumentError(std::string(name) + " must be odd and >= 3, got " +
                          std::to_string(v));
  };
  odd_window(window, "window");
  odd_window(lpq_window, "lpq_window");
  auto positive = [](int v, const char* name) {
    if (v < 1)
      throw ArgumentError(std::string(name) + " must be >= 1, got " +
                          std::to_string(v));
  };
  positive(block_size, "block_size");
  positive(hog_cell, "hog_cell");
  positive(hog_bins, "hog_bins");
  positive(phog_levels, "phog_levels");
  positive(phog_bins, "phog_bins");
  if (ltp_threshold < 0)
    throw ArgumentError("ltp_threshold must be >= 0, got " +
                        std::to_string(ltp_threshold));
}

FeatureVector extract(DescriptorId id, const GrayImage& img,
                      const DescriptorParams& p, int threads) {
  switch (id) {
    case DescriptorId::kLbp: return extract_lbp(img, p, threads);
    case DescriptorId::kMlbp: return extract_mlbp(img, p, threads);
    case DescriptorId::kLtp: return extract_ltp(img, p, threads);
    case DescriptorId::kLpq: return extract_lpq(img, p, threads);
    case DescriptorId::kHog: return extract_hog(img, p, threads);
    case DescriptorId::kPhog: return extract_phog(img, p, threads);
    case DescriptorId::kEmbedding:
      break;
  }
  throw ArgumentError("EMBEDDING is not an extractable descriptor");
}

}  // namespace faceid
