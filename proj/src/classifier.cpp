#include "botsw/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "botsw/kernels.hpp"

namespace botsw {

namespace {

constexpr long kMaxSmoIterations = 2'000'000;

// SMO on the dual of the binary problem, maximal-violating-pair selection.
// Returns alphas and bias.
void smo_binary(const Matrix& K, const std::vector<double>& y, double C, double tol,
                std::vector<double>& alpha, double& bias) {
  const std::size_t n = y.size();
  alpha.assign(n, 0.0);
  std::vector<double> grad(n, -1.0);  // G_i = (Q alpha)_i - 1

  for (long iter = 0; iter < kMaxSmoIterations; ++iter) {
    // i: argmax -y G over I_up, j: argmin -y G over I_low
    int i = -1, j = -1;
    double m_val = -std::numeric_limits<double>::infinity();
    double M_val = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n; ++t) {
      const double v = -y[t] * grad[t];
      const bool in_up = (y[t] > 0 && alpha[t] < C) || (y[t] < 0 && alpha[t] > 0);
      const bool in_low = (y[t] < 0 && alpha[t] < C) || (y[t] > 0 && alpha[t] > 0);
      if (in_up && v > m_val) {
        m_val = v;
        i = static_cast<int>(t);
      }
      if (in_low && v < M_val) {
        M_val = v;
        j = static_cast<int>(t);
      }
    }
    if (i < 0 || j < 0 || m_val - M_val <= tol) {
      bias = (i >= 0 && j >= 0) ? (m_val + M_val) / 2.0 : 0.0;
      return;
    }

    // step along y_i e_i - y_j e_j
    const double eta = K.row(i)[i] + K.row(j)[j] - 2.0 * K.row(i)[j];
    double step = eta > 1e-12 ? (m_val - M_val) / eta : std::numeric_limits<double>::infinity();
    const double cap_i = y[i] > 0 ? C - alpha[i] : alpha[i];
    const double cap_j = y[j] > 0 ? alpha[j] : C - alpha[j];
    step = std::min({step, cap_i, cap_j});

    // delta alpha = step * (y_i e_i - y_j e_j)
    alpha[i] += y[i] * step;
    alpha[j] -= y[j] * step;
    alpha[i] = std::clamp(alpha[i], 0.0, C);
    alpha[j] = std::clamp(alpha[j], 0.0, C);

    const double* Ki = K.row(i);
    const double* Kj = K.row(j);
    for (std::size_t t = 0; t < n; ++t) grad[t] += y[t] * step * (Ki[t] - Kj[t]);
  }
  // iteration cap hit: report the midpoint bias from a final sweep
  double m_val = -std::numeric_limits<double>::infinity();
  double M_val = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < n; ++t) {
    const double v = -y[t] * grad[t];
    if ((y[t] > 0 && alpha[t] < C) || (y[t] < 0 && alpha[t] > 0)) m_val = std::max(m_val, v);
    if ((y[t] < 0 && alpha[t] < C) || (y[t] > 0 && alpha[t] > 0)) M_val = std::min(M_val, v);
  }
  bias = (m_val + M_val) / 2.0;
}

}  // namespace

Matrix gram_matrix(const Matrix& X) {
  Matrix K(X.rows, X.rows);
  for (std::size_t i = 0; i < X.rows; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = kernels::dot(X.row(i), X.row(j), X.cols);
      K.row(i)[j] = v;
      K.row(j)[i] = v;
    }
  }
  return K;
}

LinearModel svm_train_gram(const Matrix& X, const Matrix& K, const std::vector<int>& y,
                           const SvmParams& p) {
  if (X.rows != y.size() || X.rows < 2) throw std::invalid_argument("svm_train: need |X|=|y|>=2");
  if (!(p.C > 0.0)) throw std::invalid_argument("svm_train: C must be > 0");
  std::set<int> cls(y.begin(), y.end());
  if (cls.size() < 2) throw std::invalid_argument("svm_train: need at least 2 classes");

  LinearModel m;
  m.classes.assign(cls.begin(), cls.end());
  m.weights = Matrix(m.classes.size(), X.cols);
  m.biases.assign(m.classes.size(), 0.0);

  std::vector<double> ybin(X.rows);
  std::vector<double> alpha;
  for (std::size_t c = 0; c < m.classes.size(); ++c) {
    for (std::size_t i = 0; i < X.rows; ++i) ybin[i] = y[i] == m.classes[c] ? 1.0 : -1.0;
    double bias = 0.0;
    smo_binary(K, ybin, p.C, p.tol, alpha, bias);
    double* w = m.weights.row(c);
    for (std::size_t i = 0; i < X.rows; ++i) {
      const double coef = alpha[i] * ybin[i];
      if (coef == 0.0) continue;
      const double* xi = X.row(i);
      for (std::size_t d = 0; d < X.cols; ++d) w[d] += coef * xi[d];
    }
    m.biases[c] = bias;
  }
  return m;
}

LinearModel svm_train(const Matrix& X, const std::vector<int>& y, const SvmParams& p) {
  return svm_train_gram(X, gram_matrix(X), y, p);
}

std::vector<double> svm_decision(const LinearModel& m, const double* x, std::size_t dim) {
  if (dim != m.weights.cols) throw std::invalid_argument("svm_decision: dimension mismatch");
  std::vector<double> scores(m.classes.size());
  for (std::size_t c = 0; c < m.classes.size(); ++c)
    scores[c] = kernels::dot(m.weights.row(c), x, dim) + m.biases[c];
  return scores;
}

int svm_predict(const LinearModel& m, const double* x, std::size_t dim) {
  const auto scores = svm_decision(m, x, dim);
  std::size_t best = 0;
  for (std::size_t c = 1; c < scores.size(); ++c)
    if (scores[c] > scores[best]) best = c;  // strict: ties keep the lowest label
  return m.classes[best];
}

EdnnResult ednn_classify(const Dataset& train, const Dataset& test) {
  if (train.length() != test.length())
    throw std::invalid_argument("ednn_classify: train/test length mismatch");
  EdnnResult r;
  r.predicted.reserve(test.size());
  const std::size_t len = train.length();
  for (const auto& q : test.series) {
    std::size_t best = 0;
    double best_d = kernels::sqdist(q.values.data(), train.series[0].values.data(), len);
    for (std::size_t i = 1; i < train.size(); ++i) {
      const double d = kernels::sqdist(q.values.data(), train.series[i].values.data(), len);
      if (d < best_d) {  // strict: ties keep the smallest training index
        best_d = d;
        best = i;
      }
    }
    const int pred = train.series[best].label;
    r.predicted.push_back(pred);
    if (pred != q.label) ++r.errors;
  }
  r.error_rate = test.size() ? static_cast<double>(r.errors) / test.size() : 0.0;
  return r;
}

}  // namespace botsw
