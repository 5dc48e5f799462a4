#pragma once

#include <optional>
#include <vector>

#include "arithcoh/dense_matrix.hpp"
#include "arithcoh/ext_field.hpp"
#include "arithcoh/poly.hpp"
#include "arithcoh/prime_field.hpp"

namespace arithcoh {

// One Galois orbit of eigenvalues: the roots of an irreducible factor g of the
// characteristic polynomial. When deg g fits the budget the eigenvalue is the
// class of X in F_r[X]/(g) and `vectors` spans its eigenspace over that field.
struct Eigenspace {
  Poly<PrimeField> factor;
  unsigned algebraic_multiplicity = 0;
  bool split = false;
  std::optional<ExtField> field;
  ExtField::Elem eigenvalue;
  std::vector<ExtField::Elem> conjugates;  // eigenvalue^(r^i), i < deg g
  Matrix<ExtField> vectors;                // n x geometric multiplicity
};

std::vector<Eigenspace> eigenspaces(const PrimeField& f, const Matrix<PrimeField>& m, unsigned max_degree);

// Columns spanning ker g(m)^e.
Matrix<PrimeField> generalized_kernel(const PrimeField& f, const Matrix<PrimeField>& m,
                                      const Poly<PrimeField>& g, unsigned e);

// Matrix of m on the invariant subspace spanned by the columns of u (full
// column rank), in the basis given by those columns.
template <class F>
Matrix<F> restrict_to(const F& f, const Matrix<F>& m, const Matrix<F>& u) {
  const size_t n = u.rows, k = u.cols;
  Matrix<F> mu = multiply(f, m, u);
  Matrix<F> aug = zeros(f, n, k + k);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < k; ++j) {
      aug(i, j) = u(i, j);
      aug(i, k + j) = mu(i, j);
    }
  auto piv = rref_inplace(f, aug);
  if (piv.size() != k || (k > 0 && piv[k - 1] != k - 1))
    throw std::domain_error("subspace is not invariant or basis is degenerate");
  for (size_t i = k; i < n; ++i)
    for (size_t j = 0; j < k; ++j)
      if (!f.is_zero(aug(i, k + j))) throw std::domain_error("subspace is not invariant");
  Matrix<F> out = zeros(f, k, k);
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) out(i, j) = aug(i, k + j);
  return out;
}

}  // namespace arithcoh
