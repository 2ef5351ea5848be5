#pragma once

#include <cstdint>
#include <vector>

#include "botsw/dataset.hpp"
#include "botsw/matrix.hpp"

namespace botsw {

struct SvmParams {
  double C = 1.0;
  std::uint64_t seed = 0;  // kept for the reproducibility contract; the solver
                           // itself is deterministic independent of it
  double tol = 1e-4;
};

// One-vs-rest linear classifiers: one weight row and bias per class,
// classes sorted ascending.
struct LinearModel {
  std::vector<int> classes;
  Matrix weights;  // classes x dim
  std::vector<double> biases;
};

// L2-regularized hinge-loss SVM per class:
//   min 1/2 ||w||^2 + C * sum_i max(0, 1 - y_i (w.x_i + b))
// with an unregularized bias, solved in the dual by sequential minimal
// optimization with maximal-violating-pair selection.
LinearModel svm_train(const Matrix& X, const std::vector<int>& y, const SvmParams& p);

// Variant reusing a precomputed Gram matrix K_ij = x_i . x_j.
LinearModel svm_train_gram(const Matrix& X, const Matrix& K, const std::vector<int>& y,
                           const SvmParams& p);

// argmax_c w_c.x + b_c, ties to the lowest class label.
int svm_predict(const LinearModel& m, const double* x, std::size_t dim);

// Decision values per class, in m.classes order.
std::vector<double> svm_decision(const LinearModel& m, const double* x, std::size_t dim);

struct EdnnResult {
  std::vector<int> predicted;
  std::size_t errors = 0;
  double error_rate = 0.0;
};

// 1NN under Euclidean distance; distance ties go to the smallest
// training index.
EdnnResult ednn_classify(const Dataset& train, const Dataset& test);

Matrix gram_matrix(const Matrix& X);

}  // namespace botsw
