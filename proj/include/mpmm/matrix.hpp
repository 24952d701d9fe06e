#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mpmm/error.hpp"
#include "mpmm/scalar.hpp"

namespace mpmm {

// Row-major dense matrix; every element carries the matrix's precision.
template <ExtendedFloat T>
class Matrix {
 public:
  using value_type = T;

  Matrix(std::size_t rows, std::size_t cols, const PrecisionSpec& prec)
      : rows_(rows), cols_(cols), prec_(prec), data_(rows * cols, zero_of<T>(prec)) {
    if (rows == 0 || cols == 0) throw UsageError("matrix dimensions must be positive");
    if (!kind_matches<T>(prec)) throw UsageError("precision " + to_string(prec) + " does not match element type");
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const PrecisionSpec& precision() const { return prec_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::span<T> data() { return data_; }
  std::span<const T> data() const { return data_; }

  void fill_zero() {
    for (auto& x : data_) set_zero(x);
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  PrecisionSpec prec_;
  std::vector<T> data_;
};

// Element-wise bit identity (shape and precision included).
template <ExtendedFloat T>
bool identical(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.precision() != b.precision()) return false;
  auto x = a.data();
  auto y = b.data();
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!identical(x[k], y[k])) return false;
  }
  return true;
}

template <ExtendedFloat T>
Matrix<T> identity_matrix(std::size_t n, const PrecisionSpec& prec) {
  Matrix<T> out(n, n, prec);
  auto one = std::get<T>(make_scalar(1.0, prec));
  for (std::size_t i = 0; i < n; ++i) out(i, i) = one;
  return out;
}

// Copy of the leading `count` rows.
template <ExtendedFloat T>
Matrix<T> leading_rows(const Matrix<T>& a, std::size_t count) {
  if (count == 0 || count > a.rows()) throw UsageError("leading_rows: bad row count");
  Matrix<T> out(count, a.cols(), a.precision());
  for (std::size_t i = 0; i < count; ++i) {
    auto src = a.row(i);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

// Square grid of n_min-sized blocks over an m x l times l x n product. The
// final block along an axis may be shorter than n_min.
struct BlockPartition {
  std::size_t n_min = 1;
  std::size_t M = 0;  // row blocks of A and C
  std::size_t L = 0;  // column blocks of A, row blocks of B
  std::size_t N = 0;  // column blocks of B and C
  std::vector<std::size_t> row_extents;
  std::vector<std::size_t> inner_extents;
  std::vector<std::size_t> col_extents;
};

BlockPartition make_partition(std::size_t m, std::size_t l, std::size_t n, std::size_t n_min);

// Integer-valued matrix, convenient for exact-arithmetic tests.
template <ExtendedFloat T>
Matrix<T> matrix_from_integers(std::size_t rows, std::size_t cols, std::span<const long> values,
                               const PrecisionSpec& prec) {
  if (values.size() != rows * cols) throw UsageError("matrix_from_integers: size mismatch");
  Matrix<T> out(rows, cols, prec);
  for (std::size_t k = 0; k < values.size(); ++k) {
    out.data()[k] = std::get<T>(make_scalar(static_cast<double>(values[k]), prec));
  }
  return out;
}

using AnyMatrix = std::variant<Matrix<DoubleDouble>, Matrix<QuadDouble>, Matrix<BigFloat>>;

}  // namespace mpmm
