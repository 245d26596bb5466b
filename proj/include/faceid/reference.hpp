#pragma once

#include "faceid/descriptors.hpp"
#include "faceid/image.hpp"

// Serial reference implementations of the six descriptors: straight nested
// loops, no parallelism, no precomputed tables. Kept for testing the OpenMP
// kernels and as the baseline in the comparison benchmark.
namespace faceid::reference {

FeatureVector extract_lbp(const GrayImage& img, const DescriptorParams& p);
FeatureVector extract_mlbp(const GrayImage& img, const DescriptorParams& p);
FeatureVector extract_ltp(const GrayImage& img, const DescriptorParams& p);
FeatureVector extract_lpq(const GrayImage& img, const DescriptorParams& p);
FeatureVector extract_hog(const GrayImage& img, const DescriptorParams& p);
FeatureVector extract_phog(const GrayImage& img, const DescriptorParams& p);

FeatureVector extract(DescriptorId id, const GrayImage& img,
                      const DescriptorParams& p);

}  // namespace faceid::reference
