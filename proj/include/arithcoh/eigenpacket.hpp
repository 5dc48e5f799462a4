#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "arithcoh/dense_matrix.hpp"
#include "arithcoh/ext_field.hpp"
#include "arithcoh/poly.hpp"
#include "arithcoh/symbol_space.hpp"

namespace arithcoh {

using HeckeKey = std::pair<uint32_t, unsigned>;  // (l, k)
using HeckeMatrices = std::map<HeckeKey, Matrix<PrimeField>>;

// A system of Hecke eigenvalues a(l,k) on a joint generalized eigenspace.
// Values live in `field` = F_r[X]/(minimal_poly); the orbit_size Galois
// conjugates of the packet are represented by this single entry.
struct Eigenpacket {
  uint32_t q = 0;
  unsigned h = 0;
  uint32_t r = 0;
  std::shared_ptr<const ExtField> field;
  Poly<PrimeField> minimal_poly;
  std::map<HeckeKey, ExtField::Elem> values;
  unsigned multiplicity = 1;  // dimension for a single conjugate
  unsigned orbit_size = 1;
  bool cuspidal = false;
  // F_r-rational basis (columns, in H^3 coordinates) of the sum of the
  // generalized eigenspaces of all conjugates.
  Matrix<PrimeField> block;
};

// Values of the central element diag(l,l,l), which acts by l^{3h}.
uint32_t central_value(const PrimeField& f, uint32_t ell, unsigned h);

// Joint decomposition: T(l,1) for l in primes (in order), then a separating
// combination inside each block. Throws when the matrices do not commute or a
// packet needs an extension of degree above max_degree.
std::vector<Eigenpacket> extract_eigenpackets(const SymbolSpace& space, const HeckeMatrices& mats,
                                              const std::vector<uint32_t>& primes, unsigned max_degree = 6);

// Every l in the list has a Hecke polynomial with a root l^{-j}, 0 <= j <= 3h+2.
bool has_boundary_pattern(const Eigenpacket& e, const std::vector<uint32_t>& primes);

// P(X) = 1 - a(l,1) X + a(l,2) l X^2 - a(l,3) l^3 X^3.
Poly<ExtField> hecke_polynomial(const Eigenpacket& e, uint32_t ell);

// a(l,k) -> l^{nk} a(l,k).
Eigenpacket twist_packet(const Eigenpacket& e, int64_t n);

// Whether the roots of the Hecke polynomial at l are stable under
// alpha -> u/alpha for some u among the pairwise products of roots.
bool esd_test(const Eigenpacket& e, uint32_t ell);

// All T(l,k), l in primes, k = 1..3.
HeckeMatrices all_hecke_matrices(const SymbolSpace& space, const std::vector<uint32_t>& primes);

}  // namespace arithcoh
