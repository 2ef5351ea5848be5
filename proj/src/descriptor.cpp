#include "botsw/descriptor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace botsw {

namespace {

// central difference on the replicate-padded level
inline double gradient_at(const std::vector<double>& level, long p) {
  const long n = static_cast<long>(level.size());
  const auto clamp = [n](long i) { return std::clamp(i, 0L, n - 1); };
  return (level[clamp(p + 1)] - level[clamp(p - 1)]) / 2.0;
}

}  // namespace

std::vector<double> describe_keypoint(const ScaleSpace& ss, const Keypoint& kp,
                                      const DescriptorParams& dp) {
  if (dp.a < 1 || dp.n_b < 1) throw std::invalid_argument("describe_keypoint: invalid params");
  if (kp.j < 0 || kp.j >= static_cast<int>(ss.levels.size()) || kp.t < 0 ||
      kp.t >= static_cast<int>(ss.length))
    throw std::invalid_argument("describe_keypoint: keypoint out of bounds");

  const std::vector<double>& level = ss.levels[kp.j];
  const long window = static_cast<long>(dp.a) * dp.n_b;
  const long start = kp.t - window / 2;
  const double sigma_w = static_cast<double>(window) / 2.0;

  std::vector<double> desc(2 * dp.n_b, 0.0);
  for (int b = 0; b < dp.n_b; ++b) {
    for (int i = 0; i < dp.a; ++i) {
      const long p = start + static_cast<long>(b) * dp.a + i;
      const double g = gradient_at(level, p);
      if (g == 0.0) continue;
      const double d = static_cast<double>(p - kp.t);
      const double w = std::exp(-d * d / (2.0 * sigma_w * sigma_w));
      if (g > 0.0)
        desc[2 * b] += w * g;
      else
        desc[2 * b + 1] += w * g;
    }
  }
  return desc;
}

Matrix describe_all(const ScaleSpace& ss, const std::vector<Keypoint>& kps,
                    const DescriptorParams& dp) {
  Matrix m(0, static_cast<std::size_t>(2 * dp.n_b));
  m.data.reserve(kps.size() * m.cols);
  for (const Keypoint& kp : kps) {
    const auto d = describe_keypoint(ss, kp, dp);
    m.append_row(d.data());
  }
  return m;
}

}  // namespace botsw
