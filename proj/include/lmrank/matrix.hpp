#pragma once

#include <cstddef>
#include <vector>

namespace lmrank {

// Dense row-major matrix; plenty for re-ranking sets of a few hundred docs.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols),
        data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill) {}

  double& operator()(int r, int c) { return data_[index(r, c)]; }
  double operator()(int r, int c) const { return data_[index(r, c)]; }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double row_sum(int r) const {
    double s = 0.0;
    for (int c = 0; c < cols_; ++c) s += data_[index(r, c)];
    return s;
  }

  double col_sum(int c) const {
    double s = 0.0;
    for (int r = 0; r < rows_; ++r) s += data_[index(r, c)];
    return s;
  }

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(c);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

}  // namespace lmrank
