#pragma once

#include <vector>

#include "arithcoh/int_matrix.hpp"

namespace arithcoh {

// Symbol [v1, v2, v3] given by the columns of an integer matrix.
struct ModularSymbol {
  Mat3 columns;
  int64_t det() const { return mat3_det(columns); }
};

struct ChainTerm {
  Mat3 matrix;  // determinant +1
  int coefficient;
};

using UnimodularChain = std::vector<ChainTerm>;

struct ReduceOptions {
  bool reverse_candidates = false;
  // Skip the rounded-combination search and use only the centered fallback.
  bool fallback_only = false;
};

// Rewrites a symbol as a sum of unimodular symbols using the four-term
// relation [v1,v2,v3] = [w,v2,v3] + [v1,w,v3] + [v1,v2,w], the vanishing of
// degenerate symbols, and invariance under rescaling columns.
UnimodularChain reduce_symbol(const ModularSymbol& s, const ReduceOptions& opts = {});

}  // namespace arithcoh
