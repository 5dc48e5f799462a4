#include "arithcoh/hecke.hpp"

#include <stdexcept>
#include <string>

namespace arithcoh {
namespace {

unsigned rank_mod(const Mat3& m, uint32_t ell) {
  PrimeField f(ell);
  Matrix<PrimeField> a = zeros(f, 3, 3);
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) a(i, j) = f.from_int(m[i][j]);
  return static_cast<unsigned>(rank(f, a));
}

}  // namespace

uint64_t gaussian_binomial3(uint32_t ell, unsigned k) {
  if (k == 0 || k == 3) return 1;
  const uint64_t l = ell;
  return l * l + l + 1;
}

std::vector<Mat3> coset_reps(uint32_t ell, unsigned k) {
  if (!is_prime(ell)) throw std::invalid_argument("Hecke prime " + std::to_string(ell) + " is not prime");
  if (k < 1 || k > 3) throw std::invalid_argument("Hecke index k must be 1, 2 or 3");
  std::vector<Mat3> out;
  const int64_t l = ell;
  for (int mask = 0; mask < 8; ++mask) {
    int64_t d[3];
    unsigned count = 0;
    for (int i = 0; i < 3; ++i) {
      d[i] = (mask >> i) & 1 ? l : 1;
      count += (mask >> i) & 1;
    }
    if (count != k) continue;
    for (int64_t a21 = 0; a21 < d[0]; ++a21)
      for (int64_t a31 = 0; a31 < d[0]; ++a31)
        for (int64_t a32 = 0; a32 < d[1]; ++a32) {
          Mat3 m{{{d[0], 0, 0}, {a21, d[1], 0}, {a31, a32, d[2]}}};
          if (rank_mod(m, ell) == 3 - k) out.push_back(m);
        }
  }
  return out;
}

Mat3 lift_point(const CosetTable& table, size_t point) {
  const auto& v = table.point(point).v;
  Mat3 g;
  if (v[0] == 1)
    g = {{{1, v[1], v[2]}, {0, 1, 0}, {0, 0, 1}}};
  else if (v[1] == 1)
    g = {{{0, 1, v[2]}, {-1, 0, 0}, {0, 0, 1}}};
  else
    g = {{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}};
  return g;
}

std::vector<uint32_t> symbol_class(const SymbolSpace& space, const Mat3& m, const std::vector<uint32_t>& n,
                                   const ReduceOptions& opts) {
  const PrimeField& f = space.field();
  const auto& W = space.module();
  std::vector<uint32_t> out(space.h3_dim(), 0);
  for (const auto& term : reduce_symbol({m}, opts)) {
    const Mat3 hinv = mat3_inverse_unimodular(term.matrix);
    // [h] (x) n = E(coset(h), h^{-1} n)
    std::vector<uint32_t> coeff = W.dim() == 1 ? n : apply(f, W.compute_action(hinv), n);
    auto c = space.class_of(space.table().coset_of(term.matrix), coeff);
    const uint32_t s = f.from_int(term.coefficient);
    for (size_t i = 0; i < out.size(); ++i) out[i] = f.add(out[i], f.mul(s, c[i]));
  }
  return out;
}

Matrix<PrimeField> hecke_matrix(const SymbolSpace& space, uint32_t ell, unsigned k, const ReduceOptions& opts) {
  if (ell == space.q() || ell == space.r())
    throw std::invalid_argument("Hecke prime must differ from the level and the modulus");
  const PrimeField& f = space.field();
  const auto& W = space.module();
  const size_t h3 = space.h3_dim();
  const auto reps = coset_reps(ell, k);
  Matrix<PrimeField> images = zeros(f, h3, h3);
  for (size_t t = 0; t < h3; ++t) {
    auto [point, j] = space.lift_generators()[t];
    const Mat3 g = lift_point(space.table(), point);
    std::vector<uint32_t> e(W.dim(), 0);
    e[j] = 1;
    // E(x, e_j) = [g] (x) g e_j, so T sends it to sum_i [s_i g] (x) s_i g e_j.
    auto ge = W.dim() == 1 ? e : apply(f, W.compute_action(g), e);
    std::vector<uint32_t> acc(h3, 0);
    for (const auto& s : reps) {
      auto n = W.dim() == 1 ? ge : apply(f, W.compute_action(s), ge);
      auto c = symbol_class(space, mat3_mul(s, g), n, opts);
      for (size_t i = 0; i < h3; ++i) acc[i] = f.add(acc[i], c[i]);
    }
    for (size_t i = 0; i < h3; ++i) images(i, t) = acc[i];
  }
  return multiply(f, images, space.lift_inverse());
}

}  // namespace arithcoh
