#pragma once

#include <string>
#include <vector>

#include "botsw/codebook.hpp"
#include "botsw/dataset.hpp"
#include "botsw/descriptor.hpp"
#include "botsw/scalespace.hpp"

namespace botsw {

enum class NormScheme { Raw, L2, SsrL2, IdfL2 };

std::string to_string(NormScheme s);
NormScheme norm_scheme_from_string(const std::string& s);

struct BowVector {
  std::vector<double> values;
  NormScheme scheme = NormScheme::Raw;
};

// Per-word number of training series the word occurs in.
struct DocumentFrequency {
  std::vector<std::size_t> df;
  std::size_t n_train = 0;
};

BowVector histogram(const std::vector<int>& assignments, int k);
BowVector l2_normalize(BowVector h);
BowVector ssr_normalize(BowVector h);
// Raw division by df (floored at 1), then l2. No logarithm.
BowVector idf_normalize(BowVector h, const DocumentFrequency& df);

BowVector apply_scheme(BowVector raw, NormScheme scheme, const DocumentFrequency* df);

// df computed from per-series word assignment histograms.
DocumentFrequency document_frequency(const std::vector<BowVector>& raw_histograms);

// Dense keypoints -> descriptors -> assignments -> histogram -> normalization.
BowVector series_to_bow(const TimeSeries& s, const Codebook& cb, const ScaleSpaceParams& sp,
                        const DescriptorParams& dp, NormScheme scheme,
                        const DocumentFrequency* df = nullptr);

// CSV export: series id, label, k values per row.
std::string bow_rows_to_csv(const std::vector<BowVector>& bows, const std::vector<int>& labels);

}  // namespace botsw
