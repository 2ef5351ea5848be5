#pragma once

#include <vector>

#include "botsw/matrix.hpp"
#include "botsw/scalespace.hpp"

namespace botsw {

struct DescriptorParams {
  int a = 4;    // block size, samples
  int n_b = 8;  // number of blocks
};

// Gaussian-weighted sums of positive and negative central-difference
// gradients over n_b contiguous blocks of a samples centered on the
// keypoint, computed on the filtered series at the keypoint's scale.
// Layout: [pos_0, neg_0, pos_1, neg_1, ...], dimension 2*n_b.
// Positive sums are >= 0, negative sums are stored signed (<= 0).
std::vector<double> describe_keypoint(const ScaleSpace& ss, const Keypoint& kp,
                                      const DescriptorParams& dp);

// One row per keypoint, in keypoint order.
Matrix describe_all(const ScaleSpace& ss, const std::vector<Keypoint>& kps,
                    const DescriptorParams& dp);

}  // namespace botsw
