#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace doitk {

/// Row-major dense matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  double* row(std::size_t r) { return data_.data() + r * cols_; }
  const double* row(std::size_t r) const { return data_.data() + r * cols_; }
  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  DenseMatrix transposed() const;
  double frobenius_norm() const;
  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct Triplet {
  std::uint32_t row;
  std::uint32_t col;
  double value;
};

/// Compressed sparse matrix holding both column (CSC) and row (CSR) layouts.
/// Explicit zeros are dropped; duplicate coordinates are summed.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> t);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return col_values_.size(); }

  // CSC access.
  const std::vector<std::size_t>& col_ptr() const { return col_ptr_; }
  const std::vector<std::uint32_t>& row_index() const { return row_index_; }
  const std::vector<double>& col_values() const { return col_values_; }
  // CSR access.
  const std::vector<std::size_t>& row_ptr() const { return row_ptr_; }
  const std::vector<std::uint32_t>& col_index() const { return col_index_; }
  const std::vector<double>& row_values() const { return row_values_; }

  /// Nonzeros in column-major order.
  std::vector<Triplet> triplets() const;
  DenseMatrix to_dense() const;
  double frobenius_norm() const;
  /// Mean over all rows*cols entries.
  double mean() const;
  bool operator==(const SparseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> col_ptr_;
  std::vector<std::uint32_t> row_index_;
  std::vector<double> col_values_;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::uint32_t> col_index_;
  std::vector<double> row_values_;
};

/// Sparse triplet text format: header "m n nnz", then one "row col value"
/// line per nonzero (0-based), column-major order.
std::string write_triplets(const SparseMatrix& m);
SparseMatrix read_triplets(std::string_view text);
/// Dense matrix in the same format, keeping entries above `threshold`.
std::string write_triplets(const DenseMatrix& m, double threshold = 1e-9);
DenseMatrix read_dense_triplets(std::string_view text);

}  // namespace doitk
