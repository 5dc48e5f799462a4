#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "arithcoh/int_matrix.hpp"

namespace arithcoh {

// Projective point of P^2(F_q), first nonzero coordinate equal to 1.
struct ProjPoint {
  std::array<uint32_t, 3> v;
  friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.v == b.v; }
};

// Points of P^2(F_q), i.e. cosets of Gamma_0(q) in SL(3,Z), under the right
// action v -> v*g. A nonzero seed enumerates the points in a shuffled order.
class CosetTable {
 public:
  explicit CosetTable(uint32_t q, uint64_t shuffle_seed = 0);

  uint32_t q() const { return q_; }
  size_t size() const { return order_.size(); }
  const ProjPoint& point(size_t i) const { return points_[order_[i]]; }

  // Index of the point spanned by (a:b:c); throws on the zero vector mod q.
  size_t index(int64_t a, int64_t b, int64_t c) const;
  size_t act(size_t i, const Mat3& g) const;
  // Coset of g: its top row mod q.
  size_t coset_of(const Mat3& g) const;
  std::vector<uint32_t> permutation(const Mat3& g) const;

 private:
  uint32_t q_;
  std::vector<ProjPoint> points_;  // canonical order
  std::vector<uint32_t> order_;    // table index -> canonical index
  std::vector<uint32_t> rank_;     // canonical index -> table index
  std::vector<uint32_t> inverse_;  // inverses mod q
};

}  // namespace arithcoh
