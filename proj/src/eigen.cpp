#include "arithcoh/eigen.hpp"

namespace arithcoh {

Matrix<PrimeField> generalized_kernel(const PrimeField& f, const Matrix<PrimeField>& m,
                                      const Poly<PrimeField>& g, unsigned e) {
  Matrix<PrimeField> gm = eval_poly(f, g, m);
  Matrix<PrimeField> p = identity(f, m.rows);
  for (unsigned i = 0; i < e; ++i) p = multiply(f, p, gm);
  return kernel(f, p);
}

std::vector<Eigenspace> eigenspaces(const PrimeField& f, const Matrix<PrimeField>& m, unsigned max_degree) {
  if (m.rows != m.cols) throw std::invalid_argument("eigenspaces of a non-square matrix");
  std::vector<Eigenspace> out;
  if (m.rows == 0) return out;
  PolyRing<PrimeField> ring(f);
  for (auto& fac : ring.factor(charpoly(f, m))) {
    Eigenspace es;
    es.factor = fac.factor;
    es.algebraic_multiplicity = fac.multiplicity;
    const unsigned d = static_cast<unsigned>(fac.factor.degree());
    if (d <= max_degree) {
      ExtField k(f, fac.factor);
      es.split = true;
      es.eigenvalue = k.generator();
      auto lam = es.eigenvalue;
      for (unsigned i = 0; i < d; ++i) {
        es.conjugates.push_back(lam);
        lam = k.frobenius(lam);
      }
      Matrix<ExtField> shifted = lift_matrix(k, m);
      for (size_t i = 0; i < m.rows; ++i) shifted(i, i) = k.sub(shifted(i, i), es.eigenvalue);
      es.vectors = kernel(k, shifted);
      es.field.emplace(std::move(k));
    }
    out.push_back(std::move(es));
  }
  return out;
}

}  // namespace arithcoh
