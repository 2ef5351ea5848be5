#pragma once

#include <cstddef>
#include <vector>

namespace botsw {

struct ScaleSpaceParams {
  double sigma0 = 1.6;
  double k_sc = 1.2599210498948732;  // 2^(1/3)
  int n_scales = 9;
  int tau_step = 10;
};

struct Keypoint {
  int t = 0;  // time index
  int j = 0;  // scale index (Gaussian level)
};

inline bool operator==(const Keypoint& a, const Keypoint& b) { return a.t == b.t && a.j == b.j; }

// Gaussian stack of a series. levels[j] is the original series filtered at
// width k_sc^j * sigma0 (each level filtered from the original, not cascaded).
struct ScaleSpace {
  std::vector<std::vector<double>> levels;
  std::size_t length = 0;
};

// Discrete Gaussian, taps at offsets -R..R with R = ceil(4*sigma),
// renormalized to sum exactly 1.
std::vector<double> gaussian_kernel(double sigma);

// Same-length convolution with gaussian_kernel(sigma), replicate padding.
std::vector<double> smooth(const std::vector<double>& s, double sigma);

// Number of levels actually built for a series of length n: the requested
// n_scales capped so the widest Gaussian satisfies k_sc^(j)*sigma0 <= n/3.
int effective_n_scales(std::size_t n, const ScaleSpaceParams& p);

ScaleSpace build_scale_space(const std::vector<double>& s, const ScaleSpaceParams& p);

// DoG stack: dog[j] = levels[j+1] - levels[j].
std::vector<std::vector<double>> dog(const ScaleSpace& ss);

// Strict local extrema of the DoG stack over the 8-neighborhood
// (t +/- 1 at the same, previous and next DoG level). Boundary times and
// boundary DoG levels are excluded. Sorted by (t, j).
std::vector<Keypoint> detect_extrema(const ScaleSpace& ss);

// Keypoints every tau_step time steps at every scale, sorted by (j, t).
std::vector<Keypoint> dense_keypoints(std::size_t length, const ScaleSpaceParams& p);

}  // namespace botsw
