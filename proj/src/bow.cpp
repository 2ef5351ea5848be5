#include "botsw/bow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace botsw {

std::string to_string(NormScheme s) {
  switch (s) {
    case NormScheme::Raw: return "raw";
    case NormScheme::L2: return "l2";
    case NormScheme::SsrL2: return "ssr";
    case NormScheme::IdfL2: return "idf";
  }
  return "?";
}

NormScheme norm_scheme_from_string(const std::string& s) {
  if (s == "raw") return NormScheme::Raw;
  if (s == "l2") return NormScheme::L2;
  if (s == "ssr") return NormScheme::SsrL2;
  if (s == "idf") return NormScheme::IdfL2;
  throw std::invalid_argument("unknown normalization scheme: " + s);
}

BowVector histogram(const std::vector<int>& assignments, int k) {
  BowVector h;
  h.values.assign(static_cast<std::size_t>(k), 0.0);
  for (int w : assignments) {
    if (w < 0 || w >= k) throw std::out_of_range("histogram: word index out of range");
    h.values[w] += 1.0;
  }
  return h;
}

BowVector l2_normalize(BowVector h) {
  double ss = 0.0;
  for (double v : h.values) ss += v * v;
  if (ss > 0.0) {
    const double inv = 1.0 / std::sqrt(ss);
    for (double& v : h.values) v *= inv;
  }
  h.scheme = NormScheme::L2;
  return h;
}

BowVector ssr_normalize(BowVector h) {
  for (double& v : h.values) {
    if (v < 0.0) throw std::invalid_argument("ssr_normalize: negative entry");
    v = std::sqrt(v);
  }
  h = l2_normalize(std::move(h));
  h.scheme = NormScheme::SsrL2;
  return h;
}

BowVector idf_normalize(BowVector h, const DocumentFrequency& df) {
  if (df.df.size() != h.values.size())
    throw std::invalid_argument("idf_normalize: dimension mismatch");
  for (std::size_t w = 0; w < h.values.size(); ++w)
    h.values[w] /= static_cast<double>(std::max<std::size_t>(df.df[w], 1));
  h = l2_normalize(std::move(h));
  h.scheme = NormScheme::IdfL2;
  return h;
}

BowVector apply_scheme(BowVector raw, NormScheme scheme, const DocumentFrequency* df) {
  switch (scheme) {
    case NormScheme::Raw: return raw;
    case NormScheme::L2: return l2_normalize(std::move(raw));
    case NormScheme::SsrL2: return ssr_normalize(std::move(raw));
    case NormScheme::IdfL2:
      if (!df) throw std::invalid_argument("apply_scheme: IDF requires document frequencies");
      return idf_normalize(std::move(raw), *df);
  }
  return raw;
}

DocumentFrequency document_frequency(const std::vector<BowVector>& raw_histograms) {
  DocumentFrequency out;
  out.n_train = raw_histograms.size();
  if (raw_histograms.empty()) return out;
  out.df.assign(raw_histograms.front().values.size(), 0);
  for (const auto& h : raw_histograms)
    for (std::size_t w = 0; w < h.values.size(); ++w)
      if (h.values[w] > 0.0) ++out.df[w];
  return out;
}

BowVector series_to_bow(const TimeSeries& s, const Codebook& cb, const ScaleSpaceParams& sp,
                        const DescriptorParams& dp, NormScheme scheme,
                        const DocumentFrequency* df) {
  ScaleSpaceParams eff = sp;
  eff.n_scales = effective_n_scales(s.values.size(), sp);
  const ScaleSpace ss = build_scale_space(s.values, eff);
  const auto kps = dense_keypoints(s.values.size(), eff);
  const Matrix desc = describe_all(ss, kps, dp);
  std::vector<int> words(desc.rows);
  for (std::size_t i = 0; i < desc.rows; ++i) words[i] = assign(cb, desc.row(i), desc.cols);
  return apply_scheme(histogram(words, cb.k()), scheme, df);
}

std::string bow_rows_to_csv(const std::vector<BowVector>& bows, const std::vector<int>& labels) {
  std::string out = "id,label";
  if (!bows.empty())
    for (std::size_t w = 0; w < bows.front().values.size(); ++w)
      out += ",w" + std::to_string(w);
  out += '\n';
  char buf[64];
  for (std::size_t i = 0; i < bows.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += std::to_string(i < labels.size() ? labels[i] : 0);
    for (double v : bows[i].values) {
      std::snprintf(buf, sizeof(buf), ",%.17g", v);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace botsw
