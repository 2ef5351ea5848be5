#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "botsw/experiment.hpp"
#include "botsw/kernels.hpp"

#include "CLI11.hpp"

namespace {

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bag-of-temporal-SIFT-words time series classifier"};
  app.require_subcommand(1);

  std::string train_path, test_path, out_path, grid_path, model_path, report_path, input_path;
  std::string scheme_name = "ssr";
  std::string method = "ednn";
  std::uint64_t seed = 0;
  int workers = 1;
  botsw::ParamSet ps;

  auto* gs = app.add_subcommand("grid-search",
                                "cross-validated parameter search, ensemble fit and evaluation");
  gs->add_option("--train", train_path, "training set file")->required();
  gs->add_option("--test", test_path, "test set file")->required();
  gs->add_option("--scheme", scheme_name, "normalization scheme: l2, ssr or idf")
      ->check(CLI::IsMember({"l2", "ssr", "idf"}));
  gs->add_option("--seed", seed, "random seed");
  gs->add_option("--grid", grid_path, "grid config file overriding the default search space");
  gs->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
  gs->add_option("--out", out_path, "report output path (JSON)")->required();
  std::string csv_path;
  gs->add_option("--csv", csv_path, "optional per-series predictions output path (CSV)");

  auto* tr = app.add_subcommand("train", "fit one pipeline with a fixed parameter set");
  tr->add_option("--train", train_path, "training set file")->required();
  tr->add_option("--a", ps.a, "block size");
  tr->add_option("--nb", ps.n_b, "number of blocks");
  tr->add_option("--k", ps.k, "codebook size");
  tr->add_option("--C", ps.C, "SVM cost");
  tr->add_option("--scheme", scheme_name, "normalization scheme: l2, ssr or idf")
      ->check(CLI::IsMember({"l2", "ssr", "idf"}));
  tr->add_option("--seed", seed, "random seed");
  tr->add_option("--out", model_path, "model output path (JSON)")->required();

  auto* pr = app.add_subcommand("predict", "classify a labeled or unlabeled file with a model");
  pr->add_option("--model", model_path, "model file from the train command")->required();
  pr->add_option("--input", input_path, "series file to classify")->required();
  pr->add_option("--out", out_path, "predictions output path (CSV, default stdout)");

  auto* ev = app.add_subcommand("evaluate", "pretty-print a grid-search report");
  ev->add_option("--report", report_path, "report file (JSON)")->required();

  auto* bl = app.add_subcommand("baseline", "reference classifier on a train/test pair");
  bl->add_option("--method", method, "baseline method")->check(CLI::IsMember({"ednn"}));
  bl->add_option("--train", train_path, "training set file")->required();
  bl->add_option("--test", test_path, "test set file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gs->parsed()) {
      botsw::BenchmarkConfig config;
      if (!grid_path.empty()) config.grid = botsw::load_grid_config(grid_path);
      config.scheme = botsw::norm_scheme_from_string(scheme_name);
      config.seed = seed;
      config.workers = workers;
      const botsw::EvalReport report = botsw::run_benchmark(train_path, test_path, config);
      write_text_file(out_path, botsw::report_to_json(report));
      if (!csv_path.empty())
        write_text_file(csv_path, botsw::predictions_to_csv(report, botsw::parse_ucr_file(test_path)));
      std::cout << botsw::format_report_table(report);
    } else if (tr->parsed()) {
      const botsw::Dataset train = botsw::parse_ucr_file(train_path);
      const botsw::Pipeline p =
          botsw::fit_pipeline(train, ps, botsw::ScaleSpaceParams{},
                              botsw::norm_scheme_from_string(scheme_name), seed);
      write_text_file(model_path, botsw::pipeline_to_json(p));
      std::cout << "model written to " << model_path << "\n";
    } else if (pr->parsed()) {
      const botsw::Pipeline p = botsw::pipeline_from_json(read_text_file(model_path));
      const botsw::Dataset input = botsw::parse_ucr_file(input_path);
      std::string csv = "id,label,predicted\n";
      std::size_t errors = 0;
      for (std::size_t i = 0; i < input.size(); ++i) {
        const int pred = botsw::predict_series(p, input.series[i]);
        errors += pred != input.series[i].label;
        csv += std::to_string(i) + ',' + std::to_string(input.series[i].label) + ',' +
               std::to_string(pred) + '\n';
      }
      if (out_path.empty())
        std::cout << csv;
      else
        write_text_file(out_path, csv);
      std::fprintf(stderr, "error rate %.6f (%zu/%zu)\n",
                   input.size() ? static_cast<double>(errors) / input.size() : 0.0, errors,
                   input.size());
    } else if (ev->parsed()) {
      const botsw::EvalReport report = botsw::report_from_json(read_text_file(report_path));
      std::cout << botsw::format_report_table(report);
    } else if (bl->parsed()) {
      const botsw::Dataset train = botsw::parse_ucr_file(train_path);
      const botsw::Dataset test = botsw::parse_ucr_file(test_path);
      const botsw::EdnnResult r = botsw::ednn_classify(train, test);
      std::printf("method     : %s\n", method.c_str());
      std::printf("errors     : %zu/%zu\n", r.errors, test.size());
      std::printf("error rate : %.6f\n", r.error_rate);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
