#pragma once

#include <cstddef>
#include <cstdint>
#include <tuple>
#include <utility>
#include <vector>

#include "arithcoh/dense_matrix.hpp"
#include "arithcoh/prime_field.hpp"

namespace arithcoh {

// Row-compressed sparse matrix over F_r. Rows are sorted by column, carry no
// duplicate columns and store no zeros.
class SparseMatrix {
 public:
  struct Entry {
    uint32_t col;
    uint32_t val;
  };

  SparseMatrix() = default;
  SparseMatrix(size_t rows, size_t cols);

  static SparseMatrix from_triplets(const PrimeField& f, size_t rows, size_t cols,
                                    const std::vector<std::tuple<size_t, size_t, int64_t>>& t);
  static SparseMatrix from_dense(const Matrix<PrimeField>& m);

  // Appends a row; duplicate columns are summed and zeros dropped.
  void append_row(const PrimeField& f, std::vector<std::pair<uint32_t, uint32_t>> entries);
  void set_cols(size_t cols) { cols_ = cols; }

  size_t rows() const { return row_ptr_.size() - 1; }
  size_t cols() const { return cols_; }
  size_t nnz() const { return entries_.size(); }

  const Entry* row_begin(size_t i) const { return entries_.data() + row_ptr_[i]; }
  const Entry* row_end(size_t i) const { return entries_.data() + row_ptr_[i + 1]; }
  size_t row_size(size_t i) const { return row_ptr_[i + 1] - row_ptr_[i]; }

  Matrix<PrimeField> to_dense(const PrimeField& f) const;
  std::vector<uint32_t> multiply(const PrimeField& f, const std::vector<uint32_t>& v) const;

 private:
  size_t cols_ = 0;
  std::vector<size_t> row_ptr_{0};
  std::vector<Entry> entries_;
};

}  // namespace arithcoh
