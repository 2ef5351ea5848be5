#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "botsw/bow.hpp"
#include "botsw/classifier.hpp"
#include "botsw/codebook.hpp"
#include "botsw/dataset.hpp"
#include "botsw/descriptor.hpp"
#include "botsw/scalespace.hpp"

namespace botsw {

struct ParamGrid {
  std::vector<int> a_values{4, 8};
  std::vector<int> nb_values{4, 8, 12, 16, 20};
  std::vector<int> k_values{32, 64, 128, 256, 512, 1024};
  std::vector<double> c_values{1.0, 10.0, 100.0};
  ScaleSpaceParams scale;  // sigma0, k_sc, n_scales, tau_step

  std::size_t size() const {
    return a_values.size() * nb_values.size() * k_values.size() * c_values.size();
  }
};

// Versioned key-value config overriding grids and fixed constants.
ParamGrid parse_grid_config(const std::string& text);
ParamGrid load_grid_config(const std::string& path);

struct ParamSet {
  int a = 4;
  int n_b = 8;
  int k = 256;
  double C = 10.0;
};

struct ParamScore {
  ParamSet params;
  double cv_accuracy = 0.0;
  int effective_k = 0;
};

struct CvResult {
  std::vector<ParamScore> scores;   // lexicographic (a, n_b, k, C) order
  std::vector<ParamSet> best_sets;  // all ties at the maximum, same order
  double best_accuracy = 0.0;
  int fold_count = 0;
  bool loo = false;
  std::vector<int> stratification_warnings;  // classes that fell back
};

// LOO when n_train < 300, else 10 stratified folds (seeded shuffle).
// Returns the fold id of every training index.
std::vector<int> make_folds(std::size_t n_train, const std::vector<int>& labels,
                            std::uint64_t seed, std::vector<int>* warnings = nullptr);

CvResult grid_search(const Dataset& train, const ParamGrid& grid, NormScheme scheme,
                     std::uint64_t seed, int workers = 1);

// One fully fitted pipeline for a fixed parameter set.
struct Pipeline {
  ParamSet params;
  ScaleSpaceParams scale;
  NormScheme scheme = NormScheme::SsrL2;
  Codebook codebook;
  DocumentFrequency df;  // used iff scheme == IdfL2
  LinearModel model;
};

Pipeline fit_pipeline(const Dataset& train, const ParamSet& ps, const ScaleSpaceParams& sp,
                      NormScheme scheme, std::uint64_t seed);

std::vector<Pipeline> fit_final(const Dataset& train, const std::vector<ParamSet>& best_sets,
                                const ScaleSpaceParams& sp, NormScheme scheme,
                                std::uint64_t seed);

int predict_series(const Pipeline& p, const TimeSeries& s);

struct EvalReport {
  std::string dataset;
  double error_rate = 0.0;
  std::map<int, std::map<int, std::size_t>> confusion;  // true -> predicted -> count
  std::vector<ParamSet> chosen_sets;
  NormScheme scheme = NormScheme::SsrL2;
  std::uint64_t seed = 0;
  double cv_accuracy = 0.0;
  double ednn_error = -1.0;  // < 0 when the baseline was not requested
  std::vector<int> predictions;                       // voted, per test series
  std::vector<std::vector<int>> pipeline_predictions;  // one row per pipeline
  std::map<std::string, double> timings_sec;  // per stage
};

// Majority vote over the ensemble; vote ties go to the lowest class label.
EvalReport predict_vote(const std::vector<Pipeline>& ensemble, const Dataset& test);

struct BenchmarkConfig {
  ParamGrid grid;
  NormScheme scheme = NormScheme::SsrL2;
  std::uint64_t seed = 0;
  int workers = 1;
  bool run_ednn = false;
};

// parse -> grid_search -> fit_final -> predict_vote.
EvalReport run_benchmark(const std::string& train_path, const std::string& test_path,
                         const BenchmarkConfig& config);

std::string report_to_json(const EvalReport& r);
EvalReport report_from_json(const std::string& text);
std::string predictions_to_csv(const EvalReport& r, const Dataset& test);
std::string format_report_table(const EvalReport& r);

// Seed derivation tags, shared between grid search and final fitting so a
// grid-point codebook is bit-identical to the final one.
std::uint64_t codebook_seed(std::uint64_t master, int a, int n_b, int k);

// Pipeline serialization for the train/predict commands.
std::string pipeline_to_json(const Pipeline& p);
Pipeline pipeline_from_json(const std::string& text);

}  // namespace botsw
