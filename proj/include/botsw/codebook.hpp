#pragma once

#include <cstdint>
#include <string>

#include "botsw/matrix.hpp"

namespace botsw {

// k-means centroids over descriptor space. effective_k may be smaller than
// the requested k when the input has fewer distinct points.
struct Codebook {
  Matrix centroids;  // effective_k x dim
  int requested_k = 0;
  double inertia = 0.0;
  int iterations = 0;

  int k() const { return static_cast<int>(centroids.rows); }
  int dim() const { return static_cast<int>(centroids.cols); }
};

// Lloyd's algorithm with k-means++ seeding (seeded, deterministic).
// Stops when assignments are stable, after 100 iterations, or when the
// relative inertia improvement drops below 1e-4. Empty clusters are
// re-seeded to the point farthest from its current centroid.
Codebook kmeans_fit(const Matrix& descriptors, int k, std::uint64_t seed);

// Index of the nearest centroid (Euclidean), ties to the lowest index.
int assign(const Codebook& cb, const double* d, std::size_t dim);

// Versioned textual serialization.
void save_codebook(const Codebook& cb, const std::string& path);
Codebook load_codebook(const std::string& path);
std::string codebook_to_json(const Codebook& cb);
Codebook codebook_from_json(const std::string& text);

}  // namespace botsw
