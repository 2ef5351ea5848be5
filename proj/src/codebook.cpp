#include "botsw/codebook.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "botsw/kernels.hpp"
#include "botsw/rng.hpp"

#include "json.hpp"

namespace botsw {

namespace {

constexpr int kMaxIterations = 100;
constexpr double kRelTolerance = 1e-4;

std::size_t count_distinct(const Matrix& x) {
  std::set<std::vector<double>> seen;
  std::vector<double> row(x.cols);
  for (std::size_t i = 0; i < x.rows; ++i) {
    row.assign(x.row(i), x.row(i) + x.cols);
    seen.insert(row);
  }
  return seen.size();
}

// k-means++: first centroid uniform, then D^2-weighted draws.
Matrix plus_plus_init(const Matrix& x, int k, std::mt19937_64& rng) {
  const std::size_t n = x.rows;
  Matrix c(0, x.cols);
  c.data.reserve(static_cast<std::size_t>(k) * x.cols);

  std::vector<double> d2(n, std::numeric_limits<double>::infinity());
  std::size_t first = static_cast<std::size_t>(uniform_below(rng, n));
  c.append_row(x.row(first));

  while (c.rows < static_cast<std::size_t>(k)) {
    const double* last = c.row(c.rows - 1);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], kernels::sqdist(x.row(i), last, x.cols));
      total += d2[i];
    }
    if (total <= 0.0) break;  // every point already covered
    const double u = uniform01(rng) * total;
    double acc = 0.0;
    std::size_t pick = n - 1;
    for (std::size_t i = 0; i < n; ++i) {
      acc += d2[i];
      if (acc > u) {
        pick = i;
        break;
      }
    }
    c.append_row(x.row(pick));
  }
  return c;
}

}  // namespace

Codebook kmeans_fit(const Matrix& x, int k, std::uint64_t seed) {
  if (x.rows == 0) throw std::invalid_argument("kmeans_fit: empty descriptor set");
  if (k < 1) throw std::invalid_argument("kmeans_fit: k must be >= 1");

  const std::size_t n = x.rows;
  const std::size_t dim = x.cols;

  int eff_k = k;
  if (static_cast<std::size_t>(k) >= n) {
    const std::size_t distinct = count_distinct(x);
    eff_k = static_cast<int>(std::min<std::size_t>(k, distinct));
  }

  std::mt19937_64 rng(seed);
  Codebook cb;
  cb.requested_k = k;
  cb.centroids = plus_plus_init(x, eff_k, rng);
  eff_k = static_cast<int>(cb.centroids.rows);

  std::vector<int> labels(n, -1);
  std::vector<double> point_d2(n, 0.0);
  double prev_inertia = std::numeric_limits<double>::infinity();

  for (int iter = 1; iter <= kMaxIterations; ++iter) {
    // assignment
    bool changed = false;
    double inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      int best = 0;
      double best_d = kernels::sqdist(x.row(i), cb.centroids.row(0), dim);
      for (int c = 1; c < eff_k; ++c) {
        const double d = kernels::sqdist(x.row(i), cb.centroids.row(c), dim);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (labels[i] != best) {
        labels[i] = best;
        changed = true;
      }
      point_d2[i] = best_d;
      inertia += best_d;
    }
    assert(inertia <= prev_inertia * (1.0 + 1e-9) && "Lloyd inertia must be non-increasing");

    cb.inertia = inertia;
    cb.iterations = iter;
    if (!changed) break;
    if (std::isfinite(prev_inertia) && prev_inertia > 0.0 &&
        (prev_inertia - inertia) / prev_inertia < kRelTolerance)
      break;
    prev_inertia = inertia;

    // update
    Matrix sums(static_cast<std::size_t>(eff_k), dim);
    std::vector<std::size_t> counts(eff_k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      double* srow = sums.row(labels[i]);
      const double* prow = x.row(i);
      for (std::size_t d = 0; d < dim; ++d) srow[d] += prow[d];
      ++counts[labels[i]];
    }
    for (int c = 0; c < eff_k; ++c) {
      if (counts[c] > 0) {
        double* crow = cb.centroids.row(c);
        const double* srow = sums.row(c);
        for (std::size_t d = 0; d < dim; ++d) crow[d] = srow[d] / static_cast<double>(counts[c]);
      } else {
        // re-seed to the point farthest from its current centroid
        std::size_t far = 0;
        for (std::size_t i = 1; i < n; ++i)
          if (point_d2[i] > point_d2[far]) far = i;
        std::copy(x.row(far), x.row(far) + dim, cb.centroids.row(c));
        point_d2[far] = 0.0;  // keep a second empty cluster from stealing it
      }
    }
  }
  return cb;
}

int assign(const Codebook& cb, const double* d, std::size_t dim) {
  if (dim != cb.centroids.cols) throw std::invalid_argument("assign: dimension mismatch");
  int best = 0;
  double best_d = kernels::sqdist(d, cb.centroids.row(0), dim);
  for (int c = 1; c < cb.k(); ++c) {
    const double dist = kernels::sqdist(d, cb.centroids.row(c), dim);
    if (dist < best_d) {
      best_d = dist;
      best = c;
    }
  }
  return best;
}

std::string codebook_to_json(const Codebook& cb) {
  nlohmann::json j;
  j["format"] = "botsw-codebook";
  j["version"] = 1;
  j["k"] = cb.k();
  j["requested_k"] = cb.requested_k;
  j["dim"] = cb.dim();
  j["centroids"] = cb.centroids.data;
  return j.dump();
}

Codebook codebook_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (j.value("format", "") != "botsw-codebook" || j.value("version", 0) != 1)
    throw std::runtime_error("codebook_from_json: unrecognized format");
  Codebook cb;
  cb.requested_k = j.at("requested_k").get<int>();
  cb.centroids.rows = j.at("k").get<std::size_t>();
  cb.centroids.cols = j.at("dim").get<std::size_t>();
  cb.centroids.data = j.at("centroids").get<std::vector<double>>();
  if (cb.centroids.data.size() != cb.centroids.rows * cb.centroids.cols)
    throw std::runtime_error("codebook_from_json: centroid size mismatch");
  return cb;
}

void save_codebook(const Codebook& cb, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_codebook: cannot open " + path);
  out << codebook_to_json(cb);
}

Codebook load_codebook(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_codebook: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return codebook_from_json(buf.str());
}

}  // namespace botsw
