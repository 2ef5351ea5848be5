#include "botsw/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace botsw {

namespace {

std::string basename_stem(const std::string& path) {
  const auto slash = path.find_last_of("/\\");
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  const auto dot = base.find_last_of('.');
  if (dot != std::string::npos && dot > 0) base = base.substr(0, dot);
  return base;
}

double parse_number(std::string_view tok, std::size_t line_no, const std::string& name) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw ParseError(name + ": line " + std::to_string(line_no) + ": non-numeric token '" +
                     std::string(tok) + "'");
  if (!std::isfinite(v))
    throw ParseError(name + ": line " + std::to_string(line_no) + ": non-finite value");
  return v;
}

}  // namespace

Dataset parse_ucr_text(const std::string& text, const std::string& name) {
  Dataset d;
  d.name = name;

  std::map<long long, double> label_seen;  // truncated -> original real label
  char delim = 0;
  std::size_t line_no = 0;
  std::size_t expected_len = 0;

  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    if (delim == 0) delim = line.find('\t') != std::string::npos ? '\t' : ',';

    TimeSeries ts;
    std::size_t pos = 0;
    bool first_tok = true;
    while (pos <= line.size()) {
      std::size_t next = line.find(delim, pos);
      if (next == std::string::npos) next = line.size();
      std::string_view tok(line.data() + pos, next - pos);
      // tolerate stray spaces around tokens
      while (!tok.empty() && (tok.front() == ' ')) tok.remove_prefix(1);
      while (!tok.empty() && (tok.back() == ' ')) tok.remove_suffix(1);
      if (tok.empty())
        throw ParseError(name + ": line " + std::to_string(line_no) + ": empty token");
      const double v = parse_number(tok, line_no, name);
      if (first_tok) {
        const double trunc = std::trunc(v);
        const long long lab = static_cast<long long>(trunc);
        auto [it, inserted] = label_seen.emplace(lab, v);
        if (!inserted && it->second != v)
          throw ParseError(name + ": line " + std::to_string(line_no) + ": labels " +
                           std::to_string(it->second) + " and " + std::to_string(v) +
                           " both truncate to " + std::to_string(lab));
        ts.label = static_cast<int>(lab);
        first_tok = false;
      } else {
        ts.values.push_back(v);
      }
      if (next == line.size()) break;
      pos = next + 1;
    }

    if (ts.values.size() < 2)
      throw ParseError(name + ": line " + std::to_string(line_no) + ": series shorter than 2");
    if (expected_len == 0) {
      expected_len = ts.values.size();
    } else if (ts.values.size() != expected_len) {
      throw ParseError(name + ": line " + std::to_string(line_no) + ": ragged row, length " +
                       std::to_string(ts.values.size()) + " != " + std::to_string(expected_len));
    }
    d.series.push_back(std::move(ts));
  }

  if (d.series.empty()) throw ParseError(name + ": empty file");

  std::set<int> cls;
  for (const auto& s : d.series) cls.insert(s.label);
  d.classes.assign(cls.begin(), cls.end());
  return d;
}

Dataset parse_ucr_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_ucr_text(buf.str(), basename_stem(path));
}

std::map<int, std::size_t> class_counts(const Dataset& d) {
  std::map<int, std::size_t> counts;
  for (const auto& s : d.series) ++counts[s.label];
  return counts;
}

std::string to_ucr_text(const Dataset& d) {
  std::string out;
  char buf[64];
  for (const auto& s : d.series) {
    out += std::to_string(s.label);
    for (double v : s.values) {
      std::snprintf(buf, sizeof(buf), ",%.17g", v);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

void write_ucr_file(const Dataset& d, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(path + ": cannot open file for writing");
  out << to_ucr_text(d);
}

}  // namespace botsw
