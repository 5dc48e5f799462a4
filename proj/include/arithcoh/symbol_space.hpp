#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "arithcoh/coset_table.hpp"
#include "arithcoh/dense_matrix.hpp"
#include "arithcoh/int_matrix.hpp"
#include "arithcoh/rref.hpp"
#include "arithcoh/sparse_matrix.hpp"
#include "arithcoh/weight_module.hpp"

namespace arithcoh {

// Column-signed permutation matrix of determinant +1 together with the sign of
// its underlying permutation, which is how it acts on symbols.
struct Symmetry {
  Mat3 m;
  int chi;
};

// The 24 symmetries of the standard symbol, identity first.
const std::vector<Symmetry>& symmetry_group();

// Order-three element cycling the columns e1, e2, -(e1+e2) of the three-term relation.
Mat3 three_term_rotation();

enum class RelationMode {
  // Symmetry relations solved in closed form on orbits of points; only
  // three-term rows reach the elimination.
  Reduced,
  // Every generator kept; symmetry rows emitted explicitly.
  Raw,
};

struct SymbolSpaceOptions {
  RelationMode mode = RelationMode::Reduced;
  // 0 or 1: two conjugate choices of the symmetry generators and rotation.
  int generator_set = 0;
  bool want_kernel = true;
  RrefOptions rref;
};

// Finite presentation of H^3(Gamma_0(q), V_h(F_r)) as the cokernel of a
// sparse relation matrix. Generator E(x, m) stands for [g] (x) g.m with g any
// matrix of SL(3,Z) in the coset x.
class SymbolSpace {
 public:
  SymbolSpace(std::shared_ptr<const CosetTable> table, std::shared_ptr<const WeightModule> module,
              SymbolSpaceOptions opts = {});

  uint32_t q() const { return table_->q(); }
  unsigned h() const { return module_->h(); }
  uint32_t r() const { return module_->field().modulus(); }
  const PrimeField& field() const { return module_->field(); }
  const CosetTable& table() const { return *table_; }
  const WeightModule& module() const { return *module_; }

  size_t generator_count() const { return table_->size() * module_->dim(); }
  const SparseMatrix& relations() const { return relations_; }
  size_t rank() const { return rank_; }
  size_t h3_dim() const { return relations_.cols() - rank_; }

  // Coordinates in F_r^{h3} of the class of E(point, m).
  std::vector<uint32_t> class_of(size_t point, const std::vector<uint32_t>& m) const;
  // Generators whose classes form a basis, and the inverse of their coordinate matrix.
  const std::vector<std::pair<size_t, size_t>>& lift_generators() const { return lifts_; }
  const Matrix<PrimeField>& lift_inverse() const { return lift_inv_; }

 private:
  void assemble_reduced();
  void assemble_raw();
  void build_classes();

  std::shared_ptr<const CosetTable> table_;
  std::shared_ptr<const WeightModule> module_;
  SymbolSpaceOptions opts_;
  SparseMatrix relations_;
  size_t rank_ = 0;
  Matrix<PrimeField> kernel_;

  // Reduced mode: per point its orbit and transversal symmetry; per orbit the
  // column offset, the coinvariant projection, and the class map.
  std::vector<uint32_t> orbit_of_, transversal_;
  std::vector<size_t> orbit_rep_, orbit_offset_;
  std::vector<Matrix<PrimeField>> orbit_proj_;   // d_O x dim; empty when the stabilizer is trivial
  std::vector<Matrix<PrimeField>> orbit_class_;  // h3 x dim
  std::vector<Matrix<PrimeField>> sym_action_;   // module action of each symmetry

  std::vector<std::pair<size_t, size_t>> lifts_;
  Matrix<PrimeField> lift_inv_;
};

size_t h3_dim(uint32_t q, unsigned h, uint32_t r, const SymbolSpaceOptions& opts = {});

}  // namespace arithcoh
