#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "botsw/experiment.hpp"
#include "doctest.h"

using namespace botsw;

namespace {

// small two-class dataset with an obvious shape difference
Dataset synthetic(int n_per_class, int len, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::string text;
  for (int i = 0; i < 2 * n_per_class; ++i) {
    const int cls = i % 2;
    text += std::to_string(cls + 1);
    const double phase = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 3.0;
    for (int t = 0; t < len; ++t) {
      const double base = cls ? std::sin(0.25 * t + phase) : std::sin(0.08 * t + phase);
      const double noise = (static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5) * 0.1;
      text += "," + std::to_string(base + noise);
    }
    text += "\n";
  }
  return parse_ucr_text(text, "synthetic");
}

ParamGrid tiny_grid() {
  ParamGrid g;
  g.a_values = {4};
  g.nb_values = {4};
  g.k_values = {8, 16};
  g.c_values = {1.0, 10.0};
  return g;
}

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("default grid enumerates 180 parameter sets") {
  CHECK(ParamGrid{}.size() == 180);
}

TEST_CASE("grid config parsing") {
  const ParamGrid g = parse_grid_config(
      "version = 1\n"
      "# comment\n"
      "a = 4\n"
      "nb = 8 12\n"
      "k = 64\n"
      "C = 1 10\n"
      "sigma0 = 2.0\n"
      "tau_step = 5\n");
  CHECK(g.a_values == std::vector<int>{4});
  CHECK(g.nb_values == std::vector<int>{8, 12});
  CHECK(g.k_values == std::vector<int>{64});
  CHECK(g.c_values == std::vector<double>{1.0, 10.0});
  CHECK(g.scale.sigma0 == 2.0);
  CHECK(g.scale.tau_step == 5);
  CHECK(g.size() == 4);

  CHECK_THROWS(parse_grid_config("a = 4\n"));              // missing version
  CHECK_THROWS(parse_grid_config("version = 2\n"));        // unknown version
  CHECK_THROWS(parse_grid_config("version = 1\nzap = 1\n"));
  CHECK_THROWS(parse_grid_config("version = 1\na 4\n"));   // missing '='
  CHECK_THROWS(parse_grid_config("version = 1\na =\n"));   // no values
}

TEST_CASE("fold rules: LOO below 300, 10 stratified folds at 300 and above") {
  std::vector<int> labels(50);
  for (int i = 0; i < 50; ++i) labels[i] = i % 2;
  const auto loo = make_folds(50, labels, 1);
  std::set<int> distinct(loo.begin(), loo.end());
  CHECK(distinct.size() == 50);

  std::vector<int> l299(299), l300(300);
  for (int i = 0; i < 299; ++i) l299[i] = i % 3;
  for (int i = 0; i < 300; ++i) l300[i] = i % 3;
  const auto f299 = make_folds(299, l299, 1);
  CHECK(std::set<int>(f299.begin(), f299.end()).size() == 299);

  const auto folds = make_folds(300, l300, 1);
  std::map<int, int> sizes;
  for (int f : folds) ++sizes[f];
  CHECK(sizes.size() == 10);
  for (const auto& [f, n] : sizes) CHECK(n == 30);

  // stratification: each class spreads evenly, sizes differ by at most 1
  std::map<int, std::map<int, int>> per_class;
  for (int i = 0; i < 300; ++i) ++per_class[l300[i]][folds[i]];
  for (const auto& [cls, by_fold] : per_class) {
    int mn = 1 << 30, mx = 0;
    for (const auto& [f, n] : by_fold) {
      mn = std::min(mn, n);
      mx = std::max(mx, n);
    }
    CHECK(mx - mn <= 1);
  }

  CHECK_THROWS(make_folds(1, {1}, 0));
}

TEST_CASE("small classes are recorded as stratification warnings") {
  std::vector<int> labels(305, 1);
  for (int i = 0; i < 4; ++i) labels[i] = 2;  // class 2 has only 4 members
  std::vector<int> warn;
  make_folds(305, labels, 3, &warn);
  CHECK(warn == std::vector<int>{2});
}

TEST_CASE("fold assignment depends on the seed deterministically") {
  std::vector<int> labels(320);
  for (int i = 0; i < 320; ++i) labels[i] = i % 4;
  CHECK(make_folds(320, labels, 7) == make_folds(320, labels, 7));
  CHECK(make_folds(320, labels, 7) != make_folds(320, labels, 8));
}

TEST_CASE("grid search scores every set in lexicographic order") {
  const Dataset train = synthetic(8, 64, 5);
  ParamGrid g = tiny_grid();
  const CvResult r = grid_search(train, g, NormScheme::SsrL2, 1);
  REQUIRE(r.scores.size() == 4);
  CHECK(r.loo);
  CHECK(r.fold_count == 16);
  CHECK(r.scores[0].params.k == 8);
  CHECK(r.scores[0].params.C == 1.0);
  CHECK(r.scores[1].params.k == 8);
  CHECK(r.scores[1].params.C == 10.0);
  CHECK(r.scores[2].params.k == 16);
  REQUIRE(!r.best_sets.empty());
  double best = 0.0;
  for (const auto& s : r.scores) best = std::max(best, s.cv_accuracy);
  CHECK(r.best_accuracy == best);
  std::size_t ties = 0;
  for (const auto& s : r.scores)
    if (s.cv_accuracy >= best - 1e-12) ++ties;
  CHECK(r.best_sets.size() == ties);
}

TEST_CASE("best-set accuracies survive an independent re-run") {
  const Dataset train = synthetic(8, 64, 5);
  ParamGrid g = tiny_grid();
  const CvResult r = grid_search(train, g, NormScheme::SsrL2, 1);

  // re-derive the CV accuracy of the first best set from scratch
  const ParamSet ps = r.best_sets.front();
  std::vector<int> labels(train.size());
  for (std::size_t i = 0; i < train.size(); ++i) labels[i] = train.series[i].label;
  const auto folds = make_folds(train.size(), labels, 1);

  ScaleSpaceParams sp = g.scale;
  sp.n_scales = effective_n_scales(train.length(), g.scale);
  const auto kps = dense_keypoints(train.length(), sp);
  Matrix all(0, 2 * ps.n_b);
  std::vector<Matrix> per;
  for (const auto& s : train.series) {
    Matrix m = describe_all(build_scale_space(s.values, sp), kps, {ps.a, ps.n_b});
    all.data.insert(all.data.end(), m.data.begin(), m.data.end());
    all.rows += m.rows;
    per.push_back(std::move(m));
  }
  const Codebook cb = kmeans_fit(all, ps.k, codebook_seed(1, ps.a, ps.n_b, ps.k));
  Matrix bows(train.size(), cb.k());
  for (std::size_t i = 0; i < train.size(); ++i) {
    std::vector<int> words(per[i].rows);
    for (std::size_t j = 0; j < per[i].rows; ++j) words[j] = assign(cb, per[i].row(j), per[i].cols);
    const BowVector b = ssr_normalize(histogram(words, cb.k()));
    std::copy(b.values.begin(), b.values.end(), bows.row(i));
  }
  double acc_sum = 0.0;
  const int n_folds = static_cast<int>(train.size());
  for (int f = 0; f < n_folds; ++f) {
    Matrix sub(0, bows.cols);
    std::vector<int> suby;
    std::size_t held = 0;
    for (std::size_t i = 0; i < train.size(); ++i) {
      if (folds[i] == f) {
        held = i;
      } else {
        sub.append_row(bows.row(i));
        suby.push_back(labels[i]);
      }
    }
    const LinearModel m = svm_train(sub, suby, {ps.C, 1});
    acc_sum += svm_predict(m, bows.row(held), bows.cols) == labels[held] ? 1.0 : 0.0;
  }
  CHECK(r.best_accuracy == doctest::Approx(acc_sum / n_folds).epsilon(1e-12));
}

TEST_CASE("worker count does not change the result") {
  const Dataset train = synthetic(6, 64, 9);
  ParamGrid g = tiny_grid();
  const CvResult a = grid_search(train, g, NormScheme::SsrL2, 2, 1);
  const CvResult b = grid_search(train, g, NormScheme::SsrL2, 2, 4);
  REQUIRE(a.scores.size() == b.scores.size());
  for (std::size_t i = 0; i < a.scores.size(); ++i)
    CHECK(a.scores[i].cv_accuracy == b.scores[i].cv_accuracy);
}

TEST_CASE("grid search works with the idf scheme") {
  const Dataset train = synthetic(6, 64, 11);
  const CvResult r = grid_search(train, tiny_grid(), NormScheme::IdfL2, 3);
  CHECK(!r.best_sets.empty());
  CHECK(r.best_accuracy > 0.5);
}

TEST_CASE("end-to-end bit reproducibility under a fixed master seed") {
  const Dataset train = synthetic(6, 64, 13);
  const Dataset test = synthetic(4, 64, 14);
  auto run = [&] {
    const CvResult cv = grid_search(train, tiny_grid(), NormScheme::SsrL2, 99, 2);
    const auto ensemble = fit_final(train, cv.best_sets, tiny_grid().scale, NormScheme::SsrL2, 99);
    EvalReport r = predict_vote(ensemble, test);
    r.seed = 99;
    r.cv_accuracy = cv.best_accuracy;
    return report_to_json(r);
  };
  const std::string a = run();
  const std::string b = run();
  CHECK(a == b);
}

TEST_CASE("final codebooks are bit-identical to grid-search codebooks") {
  const Dataset train = synthetic(6, 64, 21);
  const ParamSet ps{4, 4, 8, 1.0};
  const Pipeline p = fit_pipeline(train, ps, ParamGrid{}.scale, NormScheme::SsrL2, 5);
  // same derivation as grid_search uses internally
  ScaleSpaceParams sp = ParamGrid{}.scale;
  sp.n_scales = effective_n_scales(train.length(), sp);
  const auto kps = dense_keypoints(train.length(), sp);
  Matrix all(0, 2 * ps.n_b);
  for (const auto& s : train.series) {
    const Matrix m = describe_all(build_scale_space(s.values, sp), kps, {ps.a, ps.n_b});
    all.data.insert(all.data.end(), m.data.begin(), m.data.end());
    all.rows += m.rows;
  }
  const Codebook cb = kmeans_fit(all, ps.k, codebook_seed(5, ps.a, ps.n_b, ps.k));
  CHECK(p.codebook.centroids.data == cb.centroids.data);
}

TEST_CASE("ensemble voting: majority wins, ties go to the lowest label") {
  const Dataset train = synthetic(6, 64, 31);
  Dataset swapped = train;
  for (auto& s : swapped.series) s.label = s.label == 1 ? 2 : 1;
  swapped.classes = {1, 2};
  const ParamSet ps{4, 4, 8, 10.0};
  const Pipeline normal = fit_pipeline(train, ps, ParamGrid{}.scale, NormScheme::SsrL2, 3);
  const Pipeline inverted = fit_pipeline(swapped, ps, ParamGrid{}.scale, NormScheme::SsrL2, 3);

  const Dataset test = synthetic(3, 64, 32);
  const EvalReport single = predict_vote({normal}, test);
  const EvalReport tied = predict_vote({normal, inverted}, test);
  for (std::size_t i = 0; i < test.size(); ++i) {
    // the two pipelines disagree everywhere, so every vote is a 1-1 tie
    CHECK(tied.pipeline_predictions[0][i] != tied.pipeline_predictions[1][i]);
    CHECK(tied.predictions[i] == 1);
  }
  const EvalReport majority = predict_vote({normal, normal, inverted}, test);
  CHECK(majority.predictions == single.predictions);
}

TEST_CASE("report error rate matches the stored confusion and predictions") {
  const Dataset train = synthetic(6, 64, 41);
  const Dataset test = synthetic(5, 64, 42);
  const Pipeline p = fit_pipeline(train, {4, 4, 8, 10.0}, ParamGrid{}.scale, NormScheme::SsrL2, 1);
  const EvalReport r = predict_vote({p}, test);
  std::size_t trace = 0, total = 0;
  for (const auto& [truth, row] : r.confusion)
    for (const auto& [pred, count] : row) {
      total += count;
      if (truth == pred) trace += count;
    }
  CHECK(total == test.size());
  CHECK(r.error_rate == doctest::Approx(1.0 - static_cast<double>(trace) / total).epsilon(1e-12));

  // voted predictions recomputed from the per-pipeline predictions
  for (std::size_t i = 0; i < test.size(); ++i) {
    std::map<int, int> votes;
    for (const auto& row : r.pipeline_predictions) ++votes[row[i]];
    int winner = votes.begin()->first, wc = votes.begin()->second;
    for (const auto& [lab, c] : votes)
      if (c > wc) {
        winner = lab;
        wc = c;
      }
    CHECK(r.predictions[i] == winner);
  }
}

TEST_CASE("report json round trip") {
  const Dataset train = synthetic(6, 64, 51);
  const Dataset test = synthetic(3, 64, 52);
  const Pipeline p = fit_pipeline(train, {4, 4, 8, 1.0}, ParamGrid{}.scale, NormScheme::SsrL2, 2);
  EvalReport r = predict_vote({p}, test);
  r.seed = 2;
  r.cv_accuracy = 0.75;
  r.timings_sec["predict"] = 0.5;
  const EvalReport back = report_from_json(report_to_json(r));
  CHECK(back.dataset == r.dataset);
  CHECK(back.error_rate == r.error_rate);
  CHECK(back.predictions == r.predictions);
  CHECK(back.seed == r.seed);
  CHECK(back.chosen_sets.size() == r.chosen_sets.size());
  CHECK(back.confusion == r.confusion);
  CHECK(back.timings_sec == r.timings_sec);
  CHECK_THROWS(report_from_json("{}"));
}

TEST_CASE("pipeline json round trip preserves predictions") {
  const Dataset train = synthetic(6, 64, 61);
  const Dataset test = synthetic(3, 64, 62);
  const Pipeline p = fit_pipeline(train, {4, 4, 8, 10.0}, ParamGrid{}.scale, NormScheme::IdfL2, 7);
  const Pipeline back = pipeline_from_json(pipeline_to_json(p));
  CHECK(back.codebook.centroids.data == p.codebook.centroids.data);
  CHECK(back.model.weights.data == p.model.weights.data);
  for (const auto& s : test.series) CHECK(predict_series(back, s) == predict_series(p, s));
  CHECK_THROWS(pipeline_from_json("{}"));
}

TEST_CASE("predictions csv export") {
  EvalReport r;
  r.predictions = {1, 2};
  const Dataset test = parse_ucr_text("1,0.0,0.1\n2,0.2,0.3\n", "t");
  const std::string csv = predictions_to_csv(r, test);
  CHECK(csv == "id,label,predicted\n0,1,1\n1,2,2\n");
}

}
