#pragma once

#include <cstddef>
#include <vector>

namespace botsw {

// Row-major flat matrix; rows are the unit the kernels operate on.
struct Matrix {
  std::vector<double> data;
  std::size_t rows = 0;
  std::size_t cols = 0;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : data(r * c, 0.0), rows(r), cols(c) {}

  double* row(std::size_t i) { return data.data() + i * cols; }
  const double* row(std::size_t i) const { return data.data() + i * cols; }

  void append_row(const double* src) {
    data.insert(data.end(), src, src + cols);
    ++rows;
  }
};

}  // namespace botsw
