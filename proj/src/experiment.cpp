#include "botsw/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "botsw/rng.hpp"

#include "json.hpp"

namespace botsw {

namespace {

constexpr double kTieTolerance = 1e-12;

// seed derivation tags
enum : std::uint64_t { kTagFolds = 1, kTagCodebook = 2 };

double now_sec() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

struct DescCache {
  std::vector<Matrix> per_series;
  Matrix all;  // concatenation, one block per series
};

DescCache build_desc_cache(const std::vector<ScaleSpace>& sspaces,
                           const std::vector<Keypoint>& kps, const DescriptorParams& dp) {
  DescCache cache;
  cache.per_series.reserve(sspaces.size());
  cache.all = Matrix(0, static_cast<std::size_t>(2 * dp.n_b));
  for (const ScaleSpace& ss : sspaces) {
    Matrix m = describe_all(ss, kps, dp);
    cache.all.data.insert(cache.all.data.end(), m.data.begin(), m.data.end());
    cache.all.rows += m.rows;
    cache.per_series.push_back(std::move(m));
  }
  return cache;
}

std::vector<int> assign_all(const Codebook& cb, const Matrix& desc) {
  std::vector<int> words(desc.rows);
  for (std::size_t i = 0; i < desc.rows; ++i) words[i] = assign(cb, desc.row(i), desc.cols);
  return words;
}

BowVector raw_histogram_of(const Codebook& cb, const Matrix& desc) {
  return histogram(assign_all(cb, desc), cb.k());
}

// fold-mean accuracy of an SVM with parameter C over precomputed,
// fold-independent bows (L2 / SSR schemes)
double cv_accuracy_fixed_bows(const Matrix& bows, const Matrix& gram, const std::vector<int>& y,
                              const std::vector<int>& folds, int n_folds, double C,
                              std::uint64_t seed) {
  const std::size_t n = y.size();
  double acc_sum = 0.0;
  std::vector<std::size_t> infold, heldout;
  for (int f = 0; f < n_folds; ++f) {
    infold.clear();
    heldout.clear();
    for (std::size_t i = 0; i < n; ++i) (folds[i] == f ? heldout : infold).push_back(i);
    if (heldout.empty()) continue;

    std::set<int> cls;
    for (std::size_t i : infold) cls.insert(y[i]);
    std::size_t correct = 0;
    if (cls.size() < 2) {
      const int only = *cls.begin();
      for (std::size_t i : heldout) correct += y[i] == only;
    } else {
      Matrix subx(infold.size(), bows.cols);
      Matrix subk(infold.size(), infold.size());
      std::vector<int> suby(infold.size());
      for (std::size_t r = 0; r < infold.size(); ++r) {
        std::copy(bows.row(infold[r]), bows.row(infold[r]) + bows.cols, subx.row(r));
        suby[r] = y[infold[r]];
        for (std::size_t c = 0; c < infold.size(); ++c) subk.row(r)[c] = gram.row(infold[r])[infold[c]];
      }
      const LinearModel model = svm_train_gram(subx, subk, suby, {C, seed});
      for (std::size_t i : heldout) correct += svm_predict(model, bows.row(i), bows.cols) == y[i];
    }
    acc_sum += static_cast<double>(correct) / heldout.size();
  }
  return acc_sum / n_folds;
}

// IDF scheme: document frequencies are recomputed from in-fold series only
double cv_accuracy_idf(const std::vector<BowVector>& raw, const std::vector<int>& y,
                       const std::vector<int>& folds, int n_folds, double C,
                       std::uint64_t seed) {
  const std::size_t n = y.size();
  const std::size_t dim = raw.front().values.size();
  double acc_sum = 0.0;
  std::vector<std::size_t> infold, heldout;
  for (int f = 0; f < n_folds; ++f) {
    infold.clear();
    heldout.clear();
    for (std::size_t i = 0; i < n; ++i) (folds[i] == f ? heldout : infold).push_back(i);
    if (heldout.empty()) continue;

    std::set<int> cls;
    for (std::size_t i : infold) cls.insert(y[i]);
    std::size_t correct = 0;
    if (cls.size() < 2) {
      const int only = *cls.begin();
      for (std::size_t i : heldout) correct += y[i] == only;
    } else {
      std::vector<BowVector> infold_raw;
      infold_raw.reserve(infold.size());
      for (std::size_t i : infold) infold_raw.push_back(raw[i]);
      const DocumentFrequency df = document_frequency(infold_raw);

      Matrix subx(infold.size(), dim);
      std::vector<int> suby(infold.size());
      for (std::size_t r = 0; r < infold.size(); ++r) {
        const BowVector b = idf_normalize(raw[infold[r]], df);
        std::copy(b.values.begin(), b.values.end(), subx.row(r));
        suby[r] = y[infold[r]];
      }
      const LinearModel model = svm_train(subx, suby, {C, seed});
      for (std::size_t i : heldout) {
        const BowVector b = idf_normalize(raw[i], df);
        correct += svm_predict(model, b.values.data(), dim) == y[i];
      }
    }
    acc_sum += static_cast<double>(correct) / heldout.size();
  }
  return acc_sum / n_folds;
}

nlohmann::json param_set_to_json(const ParamSet& p) {
  return nlohmann::json{{"a", p.a}, {"n_b", p.n_b}, {"k", p.k}, {"C", p.C}};
}

ParamSet param_set_from_json(const nlohmann::json& j) {
  return ParamSet{j.at("a").get<int>(), j.at("n_b").get<int>(), j.at("k").get<int>(),
                  j.at("C").get<double>()};
}

nlohmann::json scale_to_json(const ScaleSpaceParams& s) {
  return nlohmann::json{
      {"sigma0", s.sigma0}, {"k_sc", s.k_sc}, {"n_scales", s.n_scales}, {"tau_step", s.tau_step}};
}

ScaleSpaceParams scale_from_json(const nlohmann::json& j) {
  ScaleSpaceParams s;
  s.sigma0 = j.at("sigma0").get<double>();
  s.k_sc = j.at("k_sc").get<double>();
  s.n_scales = j.at("n_scales").get<int>();
  s.tau_step = j.at("tau_step").get<int>();
  return s;
}

}  // namespace

std::uint64_t codebook_seed(std::uint64_t master, int a, int n_b, int k) {
  std::uint64_t s = mix_seed(master, kTagCodebook);
  s = mix_seed(s, static_cast<std::uint64_t>(a));
  s = mix_seed(s, static_cast<std::uint64_t>(n_b));
  s = mix_seed(s, static_cast<std::uint64_t>(k));
  return s;
}

std::vector<int> make_folds(std::size_t n_train, const std::vector<int>& labels,
                            std::uint64_t seed, std::vector<int>* warnings) {
  if (n_train < 2) throw std::invalid_argument("make_folds: need at least 2 series");
  if (labels.size() != n_train) throw std::invalid_argument("make_folds: label count mismatch");

  std::vector<int> folds(n_train);
  if (n_train < 300) {  // LOO, strict inequality
    for (std::size_t i = 0; i < n_train; ++i) folds[i] = static_cast<int>(i);
    return folds;
  }

  constexpr int kFolds = 10;
  std::mt19937_64 rng(mix_seed(seed, kTagFolds));
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < n_train; ++i) by_class[labels[i]].push_back(i);

  int cursor = 0;  // shared across classes so overall fold sizes stay balanced
  for (auto& [cls, idx] : by_class) {
    if (idx.size() < kFolds && warnings) warnings->push_back(cls);
    shuffle_vec(idx, rng);
    for (std::size_t i : idx) {
      folds[i] = cursor;
      cursor = (cursor + 1) % kFolds;
    }
  }
  return folds;
}

CvResult grid_search(const Dataset& train, const ParamGrid& grid, NormScheme scheme,
                     std::uint64_t seed, int workers) {
  const std::size_t n = train.size();
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = train.series[i].label;

  CvResult result;
  result.loo = n < 300;
  std::vector<int> folds = make_folds(n, labels, seed, &result.stratification_warnings);
  result.fold_count = result.loo ? static_cast<int>(n) : 10;

  // effective scale parameters for this series length
  ScaleSpaceParams sp = grid.scale;
  sp.n_scales = effective_n_scales(train.length(), grid.scale);

  // scale spaces and dense keypoints are shared across all (a, n_b)
  std::vector<ScaleSpace> sspaces;
  sspaces.reserve(n);
  for (const auto& s : train.series) sspaces.push_back(build_scale_space(s.values, sp));
  const std::vector<Keypoint> kps = dense_keypoints(train.length(), sp);

  const std::size_t n_a = grid.a_values.size();
  const std::size_t n_b = grid.nb_values.size();
  const std::size_t n_k = grid.k_values.size();
  const std::size_t n_c = grid.c_values.size();

  std::vector<DescCache> caches(n_a * n_b);
  for (std::size_t ai = 0; ai < n_a; ++ai)
    for (std::size_t bi = 0; bi < n_b; ++bi)
      caches[ai * n_b + bi] = build_desc_cache(
          sspaces, kps, DescriptorParams{grid.a_values[ai], grid.nb_values[bi]});
  sspaces.clear();

  result.scores.resize(n_a * n_b * n_k * n_c);

  // one job per (a, n_b, k): codebook fit + bows + all folds x all C
  const std::size_t n_jobs = n_a * n_b * n_k;
  std::atomic<std::size_t> next_job{0};
  auto worker_fn = [&]() {
    for (;;) {
      const std::size_t job = next_job.fetch_add(1);
      if (job >= n_jobs) return;
      const std::size_t ai = job / (n_b * n_k);
      const std::size_t bi = (job / n_k) % n_b;
      const std::size_t ki = job % n_k;
      const int a = grid.a_values[ai];
      const int nb = grid.nb_values[bi];
      const int k = grid.k_values[ki];
      const DescCache& cache = caches[ai * n_b + bi];

      const Codebook cb = kmeans_fit(cache.all, k, codebook_seed(seed, a, nb, k));

      std::vector<BowVector> raw(n);
      for (std::size_t i = 0; i < n; ++i) raw[i] = raw_histogram_of(cb, cache.per_series[i]);

      Matrix bows;
      Matrix gram;
      if (scheme != NormScheme::IdfL2) {
        bows = Matrix(n, static_cast<std::size_t>(cb.k()));
        for (std::size_t i = 0; i < n; ++i) {
          const BowVector b = apply_scheme(raw[i], scheme, nullptr);
          std::copy(b.values.begin(), b.values.end(), bows.row(i));
        }
        gram = gram_matrix(bows);
      }

      for (std::size_t ci = 0; ci < n_c; ++ci) {
        const double C = grid.c_values[ci];
        const double acc =
            scheme == NormScheme::IdfL2
                ? cv_accuracy_idf(raw, labels, folds, result.fold_count, C, seed)
                : cv_accuracy_fixed_bows(bows, gram, labels, folds, result.fold_count, C, seed);
        ParamScore& slot = result.scores[((ai * n_b + bi) * n_k + ki) * n_c + ci];
        slot.params = ParamSet{a, nb, k, C};
        slot.cv_accuracy = acc;
        slot.effective_k = cb.k();
      }
    }
  };

  workers = std::max(workers, 1);
  if (workers == 1) {
    worker_fn();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker_fn);
    for (auto& t : pool) t.join();
  }

  for (const ParamScore& s : result.scores)
    result.best_accuracy = std::max(result.best_accuracy, s.cv_accuracy);
  for (const ParamScore& s : result.scores)
    if (s.cv_accuracy >= result.best_accuracy - kTieTolerance) result.best_sets.push_back(s.params);
  return result;
}

Pipeline fit_pipeline(const Dataset& train, const ParamSet& ps, const ScaleSpaceParams& sp,
                      NormScheme scheme, std::uint64_t seed) {
  Pipeline p;
  p.params = ps;
  p.scale = sp;
  p.scale.n_scales = effective_n_scales(train.length(), sp);
  p.scheme = scheme;

  const DescriptorParams dp{ps.a, ps.n_b};
  const std::vector<Keypoint> kps = dense_keypoints(train.length(), p.scale);

  Matrix all(0, static_cast<std::size_t>(2 * ps.n_b));
  std::vector<Matrix> per_series;
  per_series.reserve(train.size());
  for (const auto& s : train.series) {
    const ScaleSpace ss = build_scale_space(s.values, p.scale);
    Matrix m = describe_all(ss, kps, dp);
    all.data.insert(all.data.end(), m.data.begin(), m.data.end());
    all.rows += m.rows;
    per_series.push_back(std::move(m));
  }

  p.codebook = kmeans_fit(all, ps.k, codebook_seed(seed, ps.a, ps.n_b, ps.k));

  std::vector<BowVector> raw(train.size());
  for (std::size_t i = 0; i < train.size(); ++i)
    raw[i] = raw_histogram_of(p.codebook, per_series[i]);
  if (scheme == NormScheme::IdfL2) p.df = document_frequency(raw);

  Matrix bows(train.size(), static_cast<std::size_t>(p.codebook.k()));
  std::vector<int> y(train.size());
  for (std::size_t i = 0; i < train.size(); ++i) {
    const BowVector b =
        apply_scheme(raw[i], scheme, scheme == NormScheme::IdfL2 ? &p.df : nullptr);
    std::copy(b.values.begin(), b.values.end(), bows.row(i));
    y[i] = train.series[i].label;
  }
  p.model = svm_train(bows, y, {ps.C, seed});
  return p;
}

std::vector<Pipeline> fit_final(const Dataset& train, const std::vector<ParamSet>& best_sets,
                                const ScaleSpaceParams& sp, NormScheme scheme,
                                std::uint64_t seed) {
  if (best_sets.empty()) throw std::invalid_argument("fit_final: empty best set list");
  std::vector<Pipeline> ensemble;
  ensemble.reserve(best_sets.size());
  for (const ParamSet& ps : best_sets) ensemble.push_back(fit_pipeline(train, ps, sp, scheme, seed));
  return ensemble;
}

int predict_series(const Pipeline& p, const TimeSeries& s) {
  const BowVector b = series_to_bow(s, p.codebook, p.scale, DescriptorParams{p.params.a, p.params.n_b},
                                    p.scheme, p.scheme == NormScheme::IdfL2 ? &p.df : nullptr);
  return svm_predict(p.model, b.values.data(), b.values.size());
}

EvalReport predict_vote(const std::vector<Pipeline>& ensemble, const Dataset& test) {
  if (ensemble.empty()) throw std::invalid_argument("predict_vote: empty ensemble");
  EvalReport r;
  r.dataset = test.name;
  r.scheme = ensemble.front().scheme;
  for (const Pipeline& p : ensemble) r.chosen_sets.push_back(p.params);
  r.pipeline_predictions.assign(ensemble.size(), {});

  std::size_t correct = 0;
  for (const auto& s : test.series) {
    // descriptor and word-assignment caches shared by pipelines that agree
    // on (a, n_b) resp. (a, n_b, k); codebooks are identical for equal keys
    ScaleSpaceParams sp = ensemble.front().scale;
    sp.n_scales = effective_n_scales(s.values.size(), sp);
    const ScaleSpace ss = build_scale_space(s.values, sp);
    const std::vector<Keypoint> kps = dense_keypoints(s.values.size(), sp);

    std::map<std::pair<int, int>, Matrix> desc_cache;
    std::map<std::tuple<int, int, int>, std::vector<int>> word_cache;
    std::map<int, int> votes;
    for (std::size_t pi = 0; pi < ensemble.size(); ++pi) {
      const Pipeline& p = ensemble[pi];
      const auto dkey = std::make_pair(p.params.a, p.params.n_b);
      auto dit = desc_cache.find(dkey);
      if (dit == desc_cache.end())
        dit = desc_cache.emplace(dkey, describe_all(ss, kps, DescriptorParams{p.params.a, p.params.n_b}))
                  .first;
      const auto wkey = std::make_tuple(p.params.a, p.params.n_b, p.params.k);
      auto wit = word_cache.find(wkey);
      if (wit == word_cache.end())
        wit = word_cache.emplace(wkey, assign_all(p.codebook, dit->second)).first;

      BowVector b = apply_scheme(histogram(wit->second, p.codebook.k()), p.scheme,
                                 p.scheme == NormScheme::IdfL2 ? &p.df : nullptr);
      const int pred = svm_predict(p.model, b.values.data(), b.values.size());
      r.pipeline_predictions[pi].push_back(pred);
      ++votes[pred];
    }
    int winner = votes.begin()->first;
    int winner_count = votes.begin()->second;
    for (const auto& [label, count] : votes)
      if (count > winner_count) {  // strict: ties keep the lowest label
        winner = label;
        winner_count = count;
      }
    r.predictions.push_back(winner);
    ++r.confusion[s.label][winner];
    correct += winner == s.label;
  }
  r.error_rate = test.size() ? 1.0 - static_cast<double>(correct) / test.size() : 0.0;
  return r;
}

EvalReport run_benchmark(const std::string& train_path, const std::string& test_path,
                         const BenchmarkConfig& config) {
  std::map<std::string, double> timings;
  double t0 = now_sec();
  const Dataset train = parse_ucr_file(train_path);
  const Dataset test = parse_ucr_file(test_path);
  timings["parse"] = now_sec() - t0;

  t0 = now_sec();
  const CvResult cv = grid_search(train, config.grid, config.scheme, config.seed, config.workers);
  timings["grid_search"] = now_sec() - t0;

  t0 = now_sec();
  const auto ensemble = fit_final(train, cv.best_sets, config.grid.scale, config.scheme, config.seed);
  timings["fit_final"] = now_sec() - t0;

  t0 = now_sec();
  EvalReport r = predict_vote(ensemble, test);
  timings["predict"] = now_sec() - t0;

  if (config.run_ednn) {
    t0 = now_sec();
    r.ednn_error = ednn_classify(train, test).error_rate;
    timings["ednn"] = now_sec() - t0;
  }

  r.dataset = train.name;
  r.seed = config.seed;
  r.cv_accuracy = cv.best_accuracy;
  r.timings_sec = std::move(timings);
  return r;
}

ParamGrid parse_grid_config(const std::string& text) {
  ParamGrid g;
  bool versioned = false;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string key, eq;
    if (!(ls >> key)) continue;
    if (!(ls >> eq) || eq != "=")
      throw std::runtime_error("grid config line " + std::to_string(line_no) + ": expected 'key = values'");

    auto read_ints = [&ls, line_no](std::vector<int>& out) {
      out.clear();
      int v;
      while (ls >> v) out.push_back(v);
      if (out.empty())
        throw std::runtime_error("grid config line " + std::to_string(line_no) + ": no values");
    };
    auto read_doubles = [&ls, line_no](std::vector<double>& out) {
      out.clear();
      double v;
      while (ls >> v) out.push_back(v);
      if (out.empty())
        throw std::runtime_error("grid config line " + std::to_string(line_no) + ": no values");
    };

    if (key == "version") {
      int v = 0;
      ls >> v;
      if (v != 1) throw std::runtime_error("grid config: unsupported version");
      versioned = true;
    } else if (key == "a") {
      read_ints(g.a_values);
    } else if (key == "nb") {
      read_ints(g.nb_values);
    } else if (key == "k") {
      read_ints(g.k_values);
    } else if (key == "C") {
      read_doubles(g.c_values);
    } else if (key == "sigma0") {
      ls >> g.scale.sigma0;
    } else if (key == "k_sc") {
      ls >> g.scale.k_sc;
    } else if (key == "tau_step") {
      ls >> g.scale.tau_step;
    } else if (key == "n_scales") {
      ls >> g.scale.n_scales;
    } else {
      throw std::runtime_error("grid config line " + std::to_string(line_no) + ": unknown key '" +
                               key + "'");
    }
  }
  if (!versioned) throw std::runtime_error("grid config: missing 'version = 1'");
  return g;
}

ParamGrid load_grid_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open grid config " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_grid_config(buf.str());
}

std::string report_to_json(const EvalReport& r) {
  nlohmann::json j;
  j["format"] = "botsw-report";
  j["version"] = 1;
  j["dataset"] = r.dataset;
  j["error_rate"] = r.error_rate;
  j["scheme"] = to_string(r.scheme);
  j["seed"] = r.seed;
  j["cv_accuracy"] = r.cv_accuracy;
  if (r.ednn_error >= 0.0) j["ednn_error"] = r.ednn_error;
  j["chosen_sets"] = nlohmann::json::array();
  for (const auto& p : r.chosen_sets) j["chosen_sets"].push_back(param_set_to_json(p));
  nlohmann::json conf = nlohmann::json::object();
  for (const auto& [truth, row] : r.confusion) {
    nlohmann::json jrow = nlohmann::json::object();
    for (const auto& [pred, count] : row) jrow[std::to_string(pred)] = count;
    conf[std::to_string(truth)] = std::move(jrow);
  }
  j["confusion"] = std::move(conf);
  j["predictions"] = r.predictions;
  j["timings_sec"] = r.timings_sec;
  return j.dump(2);
}

EvalReport report_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (j.value("format", "") != "botsw-report" || j.value("version", 0) != 1)
    throw std::runtime_error("report_from_json: unrecognized format");
  EvalReport r;
  r.dataset = j.at("dataset").get<std::string>();
  r.error_rate = j.at("error_rate").get<double>();
  r.scheme = norm_scheme_from_string(j.at("scheme").get<std::string>());
  r.seed = j.at("seed").get<std::uint64_t>();
  r.cv_accuracy = j.at("cv_accuracy").get<double>();
  r.ednn_error = j.value("ednn_error", -1.0);
  for (const auto& p : j.at("chosen_sets")) r.chosen_sets.push_back(param_set_from_json(p));
  for (const auto& [truth, row] : j.at("confusion").items())
    for (const auto& [pred, count] : row.items())
      r.confusion[std::stoi(truth)][std::stoi(pred)] = count.get<std::size_t>();
  r.predictions = j.at("predictions").get<std::vector<int>>();
  r.timings_sec = j.at("timings_sec").get<std::map<std::string, double>>();
  return r;
}

std::string predictions_to_csv(const EvalReport& r, const Dataset& test) {
  std::string out = "id,label,predicted\n";
  for (std::size_t i = 0; i < r.predictions.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += std::to_string(i < test.size() ? test.series[i].label : 0);
    out += ',';
    out += std::to_string(r.predictions[i]);
    out += '\n';
  }
  return out;
}

std::string format_report_table(const EvalReport& r) {
  std::ostringstream out;
  out << "dataset        : " << r.dataset << '\n';
  out << "scheme         : " << to_string(r.scheme) << '\n';
  out << "seed           : " << r.seed << '\n';
  out << "cv accuracy    : " << r.cv_accuracy << '\n';
  out << "test error rate: " << r.error_rate << '\n';
  if (r.ednn_error >= 0.0) out << "ednn error rate: " << r.ednn_error << '\n';
  out << "ensemble size  : " << r.chosen_sets.size() << '\n';
  out << "parameter sets (a, n_b, k, C):\n";
  for (const auto& p : r.chosen_sets)
    out << "  " << p.a << ' ' << p.n_b << ' ' << p.k << ' ' << p.C << '\n';
  if (!r.confusion.empty()) {
    out << "confusion (true -> predicted: count):\n";
    for (const auto& [truth, row] : r.confusion)
      for (const auto& [pred, count] : row)
        out << "  " << truth << " -> " << pred << ": " << count << '\n';
  }
  if (!r.timings_sec.empty()) {
    out << "timings (s):\n";
    for (const auto& [stage, sec] : r.timings_sec) out << "  " << stage << ": " << sec << '\n';
  }
  return out.str();
}

namespace {

nlohmann::json model_to_json(const LinearModel& m) {
  return nlohmann::json{{"classes", m.classes},
                        {"dim", m.weights.cols},
                        {"weights", m.weights.data},
                        {"biases", m.biases}};
}

LinearModel model_from_json(const nlohmann::json& j) {
  LinearModel m;
  m.classes = j.at("classes").get<std::vector<int>>();
  m.weights.cols = j.at("dim").get<std::size_t>();
  m.weights.data = j.at("weights").get<std::vector<double>>();
  m.weights.rows = m.classes.size();
  m.biases = j.at("biases").get<std::vector<double>>();
  if (m.weights.data.size() != m.weights.rows * m.weights.cols)
    throw std::runtime_error("model_from_json: weight size mismatch");
  return m;
}

}  // namespace

std::string pipeline_to_json(const Pipeline& p) {
  nlohmann::json j;
  j["format"] = "botsw-model";
  j["version"] = 1;
  j["params"] = param_set_to_json(p.params);
  j["scale"] = scale_to_json(p.scale);
  j["scheme"] = to_string(p.scheme);
  j["codebook"] = nlohmann::json::parse(codebook_to_json(p.codebook));
  j["df"] = p.df.df;
  j["df_n_train"] = p.df.n_train;
  j["model"] = model_to_json(p.model);
  return j.dump();
}

Pipeline pipeline_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (j.value("format", "") != "botsw-model" || j.value("version", 0) != 1)
    throw std::runtime_error("pipeline_from_json: unrecognized format");
  Pipeline p;
  p.params = param_set_from_json(j.at("params"));
  p.scale = scale_from_json(j.at("scale"));
  p.scheme = norm_scheme_from_string(j.at("scheme").get<std::string>());
  p.codebook = codebook_from_json(j.at("codebook").dump());
  p.df.df = j.at("df").get<std::vector<std::size_t>>();
  p.df.n_train = j.at("df_n_train").get<std::size_t>();
  p.model = model_from_json(j.at("model"));
  return p;
}

}  // namespace botsw
