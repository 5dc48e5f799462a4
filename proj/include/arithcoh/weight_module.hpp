#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <vector>

#include "arithcoh/dense_matrix.hpp"
#include "arithcoh/int_matrix.hpp"
#include "arithcoh/prime_field.hpp"

namespace arithcoh {

// Exponent vector of a monomial in three variables.
using Exps = std::array<unsigned, 3>;

// Monomials of degree h in three variables, lexicographically descending.
std::vector<Exps> monomials(unsigned h);

// Action on Sym^h of the standard representation: x_j -> sum_i g_ij x_i.
Matrix<PrimeField> sym_action(const PrimeField& f, const Mat3& g, unsigned h);

// Action on the second exterior power in the basis e1^e2, e1^e3, e2^e3.
Mat3 wedge2_action(const Mat3& g);

// Basis index of the ambient space Sym^h(A) (x) Sym^h(Lambda^2 A).
struct MonomialIndex {
  Exps x;  // exponents of x1, x2, x3
  Exps y;  // exponents of y12, y13, y23
};

// The irreducible module of highest weight (2h, h, 0), realized as the kernel
// of the contraction d/dx1 d/dy23 - d/dx2 d/dy13 + d/dx3 d/dy12 inside
// Sym^h(A) (x) Sym^h(Lambda^2 A).
//
// The kernel basis is adapted to the monomials not divisible by x1*y23: basis
// vector mu is the unique kernel element whose normal form (rewriting
// x1*y23 -> x2*y13 - x3*y12) is the monomial mu. Action matrices are then
// normal forms of translated monomials. In the rare small characteristics
// where that projection is singular on the kernel, coordinates are read off a
// set of pivot rows instead.
class WeightModule {
 public:
  WeightModule(unsigned h, const PrimeField& f);

  unsigned h() const { return h_; }
  const PrimeField& field() const { return f_; }
  size_t dim() const { return basis_.cols; }
  size_t ambient_dim() const { return ambient_.size(); }
  const std::vector<MonomialIndex>& ambient_basis() const { return ambient_; }
  // Columns are the kernel basis vectors in ambient coordinates.
  const Matrix<PrimeField>& basis() const { return basis_; }

  // Ambient action of g (no determinant condition).
  Matrix<PrimeField> ambient_action(const Mat3& g) const;
  // Contraction Sym^h (x) Sym^h -> Sym^{h-1} (x) Sym^{h-1}.
  Matrix<PrimeField> contraction() const;

  // Action on the module; throws when det g is divisible by r.
  Matrix<PrimeField> compute_action(const Mat3& g) const;
  // Cached variant; references stay valid for the lifetime of the module.
  const Matrix<PrimeField>& action(const Mat3& g) const;

 private:
  size_t ambient_index(const Exps& x, const Exps& y) const;

  unsigned h_;
  PrimeField f_;
  std::vector<Exps> mono_;
  std::vector<MonomialIndex> ambient_;
  std::vector<size_t> standard_;                                  // ambient indices of standard monomials
  std::vector<int64_t> standard_pos_;                             // ambient index -> position or -1
  std::vector<std::vector<std::pair<uint32_t, uint32_t>>> nf_;    // normal form of each ambient monomial
  Matrix<PrimeField> basis_;
  bool use_normal_form_ = true;
  std::vector<size_t> select_;
  mutable std::mutex cache_mutex_;
  mutable std::map<Mat3, Matrix<PrimeField>> cache_;
};

}  // namespace arithcoh
