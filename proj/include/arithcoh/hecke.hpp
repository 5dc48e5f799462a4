#pragma once

#include <cstdint>
#include <vector>

#include "arithcoh/dense_matrix.hpp"
#include "arithcoh/int_matrix.hpp"
#include "arithcoh/modular_symbol.hpp"
#include "arithcoh/symbol_space.hpp"

namespace arithcoh {

// Representatives of the right cosets Gamma\Gamma diag(1,..,l,..,l) Gamma with k
// entries l, in lower-triangular Hermite form: diagonal entries in {1, l},
// entries below the diagonal reduced modulo the diagonal entry of their column.
// The top row is (d, 0, 0), so every representative lies in the level-q
// semigroup for every q prime to l.
std::vector<Mat3> coset_reps(uint32_t ell, unsigned k);

// Gaussian binomial [3 choose k]_l.
uint64_t gaussian_binomial3(uint32_t ell, unsigned k);

// A matrix of SL(3,Z) in the coset of the given point.
Mat3 lift_point(const CosetTable& table, size_t point);

// Matrix of T(l,k) on H^3 in the coordinates of space.class_of.
Matrix<PrimeField> hecke_matrix(const SymbolSpace& space, uint32_t ell, unsigned k, const ReduceOptions& opts = {});

// Class of sum_i coefficient_i [m_i] (x) n for a non-degenerate integer matrix
// m_i, reduced to unimodular symbols.
std::vector<uint32_t> symbol_class(const SymbolSpace& space, const Mat3& m, const std::vector<uint32_t>& n,
                                   const ReduceOptions& opts = {});

}  // namespace arithcoh
