#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "json.hpp"
#include "trustlens/error.hpp"

namespace trustlens::learners {

/// Dense row-major matrix of doubles; one row per instance.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  static Matrix from_rows(const std::vector<std::vector<double>>& rows) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw ValidationError("ragged matrix rows");
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * m.cols_));
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }

  /// Rows selected by index, in the given order.
  Matrix select(std::span<const std::size_t> idx) const {
    Matrix m(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      auto src = row(idx[i]);
      std::copy(src.begin(), src.end(), m.row(i).begin());
    }
    return m;
  }

  const std::vector<double>& data() const noexcept { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// [p(untrusted), p(trusted)]
using Proba = std::array<double, 2>;

inline int argmax(const Proba& p) noexcept { return p[1] > p[0] ? 1 : 0; }

namespace detail {

inline void check_training_set(const Matrix& x, std::span<const int> y) {
  if (x.rows() != y.size()) throw ValidationError("feature rows and labels differ in length");
  if (x.rows() < 2) throw ValidationError("degenerate training set: fewer than 2 instances");
  if (x.cols() == 0) throw ValidationError("degenerate training set: no features");
  bool has0 = false, has1 = false;
  for (int v : y) {
    if (v == 0) has0 = true;
    else if (v == 1) has1 = true;
    else throw ValidationError("labels must be 0 or 1");
  }
  if (!has0 || !has1) throw ValidationError("degenerate training set: single class");
}

inline void check_width(std::span<const double> x, std::size_t expected) {
  if (x.size() != expected) {
    throw ValidationError("expected " + std::to_string(expected) + " features, got " +
                          std::to_string(x.size()));
  }
}

}  // namespace detail

}  // namespace trustlens::learners
