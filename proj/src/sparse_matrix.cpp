#include "arithcoh/sparse_matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace arithcoh {

SparseMatrix::SparseMatrix(size_t rows, size_t cols) : cols_(cols) { row_ptr_.assign(rows + 1, 0); }

SparseMatrix SparseMatrix::from_triplets(const PrimeField& f, size_t rows, size_t cols,
                                         const std::vector<std::tuple<size_t, size_t, int64_t>>& t) {
  std::vector<std::vector<std::pair<uint32_t, uint32_t>>> by_row(rows);
  for (auto [i, j, v] : t) {
    if (i >= rows || j >= cols) throw std::out_of_range("triplet outside matrix shape");
    by_row[i].push_back({static_cast<uint32_t>(j), f.from_int(v)});
  }
  SparseMatrix m(0, cols);
  for (auto& r : by_row) m.append_row(f, std::move(r));
  return m;
}

SparseMatrix SparseMatrix::from_dense(const Matrix<PrimeField>& d) {
  SparseMatrix m(0, d.cols);
  for (size_t i = 0; i < d.rows; ++i) {
    for (size_t j = 0; j < d.cols; ++j)
      if (d(i, j)) m.entries_.push_back({static_cast<uint32_t>(j), d(i, j)});
    m.row_ptr_.push_back(m.entries_.size());
  }
  return m;
}

void SparseMatrix::append_row(const PrimeField& f, std::vector<std::pair<uint32_t, uint32_t>> e) {
  std::sort(e.begin(), e.end(), [](auto& a, auto& b) { return a.first < b.first; });
  size_t i = 0;
  while (i < e.size()) {
    uint32_t c = e[i].first;
    if (c >= cols_) throw std::out_of_range("column index outside matrix shape");
    uint32_t v = 0;
    for (; i < e.size() && e[i].first == c; ++i) v = f.add(v, e[i].second % f.modulus());
    if (v) entries_.push_back({c, v});
  }
  row_ptr_.push_back(entries_.size());
}

Matrix<PrimeField> SparseMatrix::to_dense(const PrimeField& f) const {
  Matrix<PrimeField> d = zeros(f, rows(), cols_);
  for (size_t i = 0; i < rows(); ++i)
    for (auto* e = row_begin(i); e != row_end(i); ++e) d(i, e->col) = e->val;
  return d;
}

std::vector<uint32_t> SparseMatrix::multiply(const PrimeField& f, const std::vector<uint32_t>& v) const {
  if (v.size() != cols_) throw std::invalid_argument("vector length mismatch");
  std::vector<uint32_t> out(rows(), 0);
  for (size_t i = 0; i < rows(); ++i) {
    uint32_t s = 0;
    for (auto* e = row_begin(i); e != row_end(i); ++e) s = f.add(s, f.mul(e->val, v[e->col]));
    out[i] = s;
  }
  return out;
}

}  // namespace arithcoh
