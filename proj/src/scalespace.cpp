#include "botsw/scalespace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "botsw/kernels.hpp"

namespace botsw {

std::vector<double> gaussian_kernel(double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_kernel: sigma must be > 0");
  const int radius = static_cast<int>(std::ceil(4.0 * sigma));
  std::vector<double> k(2 * radius + 1);
  double sum = 0.0;
  for (int t = -radius; t <= radius; ++t) {
    const double v = std::exp(-static_cast<double>(t) * t / (2.0 * sigma * sigma));
    k[t + radius] = v;
    sum += v;
  }
  for (double& v : k) v /= sum;
  return k;
}

std::vector<double> smooth(const std::vector<double>& s, double sigma) {
  if (s.size() < 2) throw std::invalid_argument("smooth: series shorter than 2");
  const std::vector<double> kernel = gaussian_kernel(sigma);
  const int radius = static_cast<int>(kernel.size() / 2);
  const std::size_t n = s.size();

  // replicate-padded copy, then each output is one dot product
  std::vector<double> padded(n + 2 * radius);
  std::fill(padded.begin(), padded.begin() + radius, s.front());
  std::copy(s.begin(), s.end(), padded.begin() + radius);
  std::fill(padded.end() - radius, padded.end(), s.back());

  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = kernels::dot(kernel.data(), padded.data() + i, kernel.size());
  return out;
}

int effective_n_scales(std::size_t n, const ScaleSpaceParams& p) {
  int m = 1;
  while (m < p.n_scales &&
         p.sigma0 * std::pow(p.k_sc, static_cast<double>(m)) <= static_cast<double>(n) / 3.0)
    ++m;
  return m;
}

ScaleSpace build_scale_space(const std::vector<double>& s, const ScaleSpaceParams& p) {
  if (!(p.sigma0 > 0.0) || !(p.k_sc > 1.0) || p.n_scales < 1)
    throw std::invalid_argument("build_scale_space: invalid parameters");
  ScaleSpace ss;
  ss.length = s.size();
  const int m = effective_n_scales(s.size(), p);
  ss.levels.reserve(m);
  for (int j = 0; j < m; ++j)
    ss.levels.push_back(smooth(s, p.sigma0 * std::pow(p.k_sc, static_cast<double>(j))));
  return ss;
}

std::vector<std::vector<double>> dog(const ScaleSpace& ss) {
  if (ss.levels.size() < 2) throw std::invalid_argument("dog: need at least 2 levels");
  std::vector<std::vector<double>> d(ss.levels.size() - 1);
  for (std::size_t j = 0; j + 1 < ss.levels.size(); ++j) {
    d[j].resize(ss.length);
    for (std::size_t t = 0; t < ss.length; ++t) d[j][t] = ss.levels[j + 1][t] - ss.levels[j][t];
  }
  return d;
}

std::vector<Keypoint> detect_extrema(const ScaleSpace& ss) {
  if (ss.levels.size() < 4)
    throw std::invalid_argument("detect_extrema: need n_scales >= 4 (3 DoG levels)");
  const auto d = dog(ss);
  const int n_dog = static_cast<int>(d.size());
  const int n = static_cast<int>(ss.length);

  std::vector<Keypoint> kps;
  for (int t = 1; t <= n - 2; ++t) {
    for (int j = 1; j <= n_dog - 2; ++j) {
      const double c = d[j][t];
      bool hi = true, lo = true;
      for (int dj = -1; dj <= 1 && (hi || lo); ++dj) {
        for (int dt = -1; dt <= 1; ++dt) {
          if (dj == 0 && dt == 0) continue;
          const double v = d[j + dj][t + dt];
          hi = hi && c > v;
          lo = lo && c < v;
        }
      }
      if (hi || lo) kps.push_back({t, j});
    }
  }
  return kps;  // already sorted by (t, j)
}

std::vector<Keypoint> dense_keypoints(std::size_t length, const ScaleSpaceParams& p) {
  if (length < 2) throw std::invalid_argument("dense_keypoints: series shorter than 2");
  if (p.tau_step < 1 || p.n_scales < 1)
    throw std::invalid_argument("dense_keypoints: invalid parameters");
  std::vector<Keypoint> kps;
  for (int j = 0; j < p.n_scales; ++j)
    for (std::size_t t = 0; t < length; t += static_cast<std::size_t>(p.tau_step))
      kps.push_back({static_cast<int>(t), j});
  return kps;  // sorted by (j, t)
}

}  // namespace botsw
