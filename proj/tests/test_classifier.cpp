#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "botsw/classifier.hpp"
#include "botsw/dataset.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace botsw;

namespace {

Matrix points(const std::vector<std::vector<double>>& rows) {
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    std::copy(rows[i].begin(), rows[i].end(), m.row(i));
  return m;
}

}  // namespace

TEST_SUITE("classifier") {

TEST_CASE("analytic max-margin toy: boundary at zero") {
  std::vector<std::vector<double>> rows;
  std::vector<int> y;
  for (int i = 0; i < 10; ++i) {
    rows.push_back({-1.0});
    y.push_back(1);
    rows.push_back({1.0});
    y.push_back(2);
  }
  const Matrix X = points(rows);
  const LinearModel m = svm_train(X, y, {100.0, 0});
  // class order is {1, 2}; class 2 lives at x=+1, so its weight is +1
  CHECK(m.classes == std::vector<int>{1, 2});
  CHECK(m.weights.row(0)[0] == doctest::Approx(-1.0).epsilon(1e-3));
  CHECK(m.weights.row(1)[0] == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(std::abs(m.biases[0]) <= 1e-3);
  CHECK(std::abs(m.biases[1]) <= 1e-3);
  const double a = -1.0, b = 1.0;
  CHECK(svm_predict(m, &a, 1) == 1);
  CHECK(svm_predict(m, &b, 1) == 2);
}

TEST_CASE("separable 2-d toy trains to zero error with large C") {
  std::mt19937_64 rng(3);
  std::vector<std::vector<double>> rows;
  std::vector<int> y;
  for (int i = 0; i < 20; ++i) {
    const double jx = (static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5);
    const double jy = (static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5);
    rows.push_back({2.0 + jx, 2.0 + jy});
    y.push_back(7);
    rows.push_back({-2.0 + jx, -2.0 + jy});
    y.push_back(3);
  }
  const Matrix X = points(rows);
  const LinearModel m = svm_train(X, y, {100.0, 0});
  for (std::size_t i = 0; i < X.rows; ++i) CHECK(svm_predict(m, X.row(i), 2) == y[i]);
}

TEST_CASE("objective within 1e-3 relative of the subgradient oracle") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 5; ++rep) {
    const std::size_t n = 10 + rng() % 40;
    const std::size_t d = 1 + rng() % 3;
    Matrix X(n, d);
    std::vector<int> labels(n);
    std::vector<double> yb(n);
    for (std::size_t i = 0; i < n; ++i) {
      const int cls = static_cast<int>(rng() % 2);
      labels[i] = cls;
      yb[i] = cls ? 1.0 : -1.0;
      for (std::size_t j = 0; j < d; ++j)
        X.row(i)[j] = yb[i] * 0.8 + (static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5) * 2.0;
    }
    const double C = 1.0 + static_cast<double>(rng() % 10);
    const LinearModel m = svm_train(X, labels, {C, 0});
    // class 1 (index 1 in sorted {0,1}) is the +1 side
    std::vector<double> w(m.weights.row(1), m.weights.row(1) + d);
    const double mine = oracle::svm_objective(X, yb, C, w, m.biases[1]);
    const auto ref = oracle::svm_subgradient(X, yb, C, 60000);
    CHECK(mine <= ref.objective * (1.0 + 1e-3) + 1e-9);
    CHECK(mine >= ref.objective * (1.0 - 1e-1) - 1e-9);  // oracle may be slightly worse
  }
}

TEST_CASE("training is bitwise deterministic") {
  std::mt19937_64 rng(13);
  Matrix X(30, 4);
  std::vector<int> y(30);
  for (std::size_t i = 0; i < 30; ++i) {
    y[i] = static_cast<int>(i % 3);
    for (std::size_t j = 0; j < 4; ++j)
      X.row(i)[j] = static_cast<double>(rng() >> 11) * 0x1.0p-53 + (i % 3);
  }
  const LinearModel a = svm_train(X, y, {10.0, 5});
  const LinearModel b = svm_train(X, y, {10.0, 5});
  CHECK(a.weights.data == b.weights.data);
  CHECK(a.biases == b.biases);
}

TEST_CASE("binary one-vs-rest scores mirror each other") {
  std::mt19937_64 rng(17);
  Matrix X(40, 3);
  std::vector<int> y(40);
  for (std::size_t i = 0; i < 40; ++i) {
    y[i] = static_cast<int>(i % 2);
    for (std::size_t j = 0; j < 3; ++j)
      X.row(i)[j] = (y[i] ? 1.0 : -1.0) + (static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5);
  }
  const LinearModel m = svm_train(X, y, {10.0, 0});
  for (std::size_t i = 0; i < X.rows; ++i) {
    const auto scores = svm_decision(m, X.row(i), 3);
    // the two one-vs-rest problems are label-mirrored, so the score ranking
    // must flip consistently
    CHECK(((scores[0] > scores[1]) == (svm_predict(m, X.row(i), 3) == 0)));
  }
}

TEST_CASE("prediction ties go to the lowest class label") {
  LinearModel m;
  m.classes = {2, 5};
  m.weights = Matrix(2, 1);
  m.weights.row(0)[0] = 1.0;
  m.weights.row(1)[0] = 1.0;
  m.biases = {0.0, 0.0};
  const double x = 3.0;
  CHECK(svm_predict(m, &x, 1) == 2);
}

TEST_CASE("appending a strictly weaker duplicate class leaves predictions unchanged") {
  LinearModel m;
  m.classes = {1, 2};
  m.weights = Matrix(2, 2);
  m.weights.row(0)[0] = 1.0;
  m.weights.row(1)[1] = 1.0;
  m.biases = {0.0, 0.1};
  LinearModel m2 = m;
  m2.classes.push_back(3);
  m2.weights.append_row(m.weights.row(0));
  m2.biases.push_back(-100.0);
  std::mt19937_64 rng(19);
  for (int rep = 0; rep < 50; ++rep) {
    double x[2] = {static_cast<double>(rng() >> 11) * 0x1.0p-53 * 4 - 2,
                   static_cast<double>(rng() >> 11) * 0x1.0p-53 * 4 - 2};
    CHECK(svm_predict(m, x, 2) == svm_predict(m2, x, 2));
  }
}

TEST_CASE("svm_train rejects degenerate input") {
  Matrix X(2, 1);
  X.row(0)[0] = 0.0;
  X.row(1)[0] = 1.0;
  CHECK_THROWS(svm_train(X, {1, 1}, {1.0, 0}));       // single class
  CHECK_THROWS(svm_train(X, {1, 2}, {0.0, 0}));       // C = 0
  CHECK_THROWS(svm_train(X, {1}, {1.0, 0}));          // size mismatch
}

TEST_CASE("ednn basics and determinism") {
  const Dataset train = parse_ucr_text("1,0.0,0.0\n2,1.0,1.0\n", "tr");
  const Dataset test = parse_ucr_text("2,0.9,1.1\n1,0.1,-0.1\n1,0.0,0.0\n", "te");
  const EdnnResult r = ednn_classify(train, test);
  CHECK(r.predicted == std::vector<int>{2, 1, 1});
  CHECK(r.errors == 0);
  CHECK(r.error_rate == 0.0);

  // distance tie: both training series equidistant, smallest index wins
  const Dataset tr2 = parse_ucr_text("5,1.0,0.0\n4,-1.0,0.0\n", "tr2");
  const Dataset te2 = parse_ucr_text("4,0.0,0.0\n", "te2");
  CHECK(ednn_classify(tr2, te2).predicted[0] == 5);

  CHECK_THROWS(ednn_classify(train, parse_ucr_text("1,0.0,0.0,0.0\n", "longer")));
}

TEST_CASE("ednn is equivariant under test order permutation") {
  std::mt19937_64 rng(23);
  auto mk = [&](int n) {
    std::string text;
    for (int i = 0; i < n; ++i) {
      text += std::to_string(1 + i % 2);
      for (int j = 0; j < 8; ++j)
        text += "," + std::to_string(static_cast<double>(rng() >> 11) * 0x1.0p-53);
      text += "\n";
    }
    return parse_ucr_text(text, "rnd");
  };
  const Dataset train = mk(12);
  Dataset test = mk(9);
  const auto base = ednn_classify(train, test).predicted;
  Dataset rev = test;
  std::reverse(rev.series.begin(), rev.series.end());
  const auto r = ednn_classify(train, rev).predicted;
  for (std::size_t i = 0; i < r.size(); ++i) CHECK(r[i] == base[base.size() - 1 - i]);
}

}
