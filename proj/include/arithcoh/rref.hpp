#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "arithcoh/dense_matrix.hpp"
#include "arithcoh/prime_field.hpp"
#include "arithcoh/sparse_matrix.hpp"

namespace arithcoh {

struct RrefOptions {
  // Sparse Markowitz elimination runs while the cheapest pivot costs at most
  // this many fill-in updates; the remainder is finished densely.
  size_t markowitz_max_cost = 8192;
  // Abandon the sparse phase when active nonzeros exceed this multiple of the input.
  double fill_limit = 3.0;
  // Rows per block in the dense phase.
  size_t chunk_rows = 256;
  bool want_kernel = true;
  std::function<void(const std::string&)> progress;
};

struct RrefResult {
  size_t rank = 0;
  std::vector<uint32_t> pivot_columns;  // ascending
  Matrix<PrimeField> kernel_basis;      // cols x nullity; columns span the right kernel
  size_t sparse_pivots = 0;             // pivots found by the sparse phase
};

RrefResult rref(const PrimeField& f, const SparseMatrix& m, const RrefOptions& opts = {});

}  // namespace arithcoh
