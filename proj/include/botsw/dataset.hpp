#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace botsw {

struct TimeSeries {
  std::vector<double> values;
  int label = 0;
};

// A UCR-style dataset: fixed-length labeled series.
struct Dataset {
  std::vector<TimeSeries> series;
  std::string name;
  std::vector<int> classes;  // sorted distinct labels

  std::size_t size() const { return series.size(); }
  std::size_t length() const { return series.empty() ? 0 : series.front().values.size(); }
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses a UCR text file (`label,v1,...,vL` per line, comma or tab delimited,
// delimiter auto-detected from the first line). Real-valued labels are
// truncated to integers; distinct reals mapping to the same integer are
// rejected. Throws ParseError with a line number on malformed input.
Dataset parse_ucr_file(const std::string& path);

// Same parser over an in-memory buffer; `name` is used for error messages
// and the resulting Dataset.
Dataset parse_ucr_text(const std::string& text, const std::string& name);

std::map<int, std::size_t> class_counts(const Dataset& d);

// Round-trip serialization (values rendered with max_digits10).
std::string to_ucr_text(const Dataset& d);
void write_ucr_file(const Dataset& d, const std::string& path);

}  // namespace botsw
