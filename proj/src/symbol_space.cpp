#include "arithcoh/symbol_space.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace arithcoh {
namespace {

using SparseCols = std::vector<std::vector<std::pair<uint32_t, uint32_t>>>;

SparseCols sparse_columns(const Matrix<PrimeField>& m) {
  SparseCols cols(m.cols);
  for (size_t i = 0; i < m.rows; ++i)
    for (size_t j = 0; j < m.cols; ++j)
      if (m(i, j)) cols[j].push_back({static_cast<uint32_t>(i), m(i, j)});
  return cols;
}

Mat3 conjugator() { return {{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}}; }

// Generators of the symmetry group for the raw presentation.
std::vector<Mat3> symmetry_generators(int set) {
  std::vector<Mat3> gens{{{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}},
                         {{{0, 1, 0}, {1, 0, 0}, {0, 0, -1}}},
                         {{{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}}}};
  if (set == 1) {
    Mat3 c = {{{0, 1, 0}, {1, 0, 0}, {0, 0, -1}}};
    Mat3 ci = mat3_inverse_unimodular(c);
    for (auto& g : gens) g = mat3_mul(mat3_mul(c, g), ci);
  }
  return gens;
}

Mat3 rotation_for(int set) {
  Mat3 t = three_term_rotation();
  if (set == 0) return t;
  Mat3 c = conjugator();
  return mat3_mul(mat3_mul(c, t), mat3_inverse_unimodular(c));
}

int chi_of(const Mat3& m) {
  for (const auto& s : symmetry_group())
    if (s.m == m) return s.chi;
  throw std::logic_error("matrix is not a symbol symmetry");
}

}  // namespace

const std::vector<Symmetry>& symmetry_group() {
  static const std::vector<Symmetry> group = [] {
    std::vector<Symmetry> out;
    std::array<int, 3> perm{0, 1, 2};
    do {
      int sign = 1;
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
          if (perm[i] > perm[j]) sign = -sign;
      for (int s = 0; s < 8; ++s) {
        Mat3 m{};
        for (int c = 0; c < 3; ++c) m[perm[c]][c] = (s >> c) & 1 ? -1 : 1;
        if (mat3_det(m) == 1) out.push_back({m, sign});
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
  }();
  return group;
}

Mat3 three_term_rotation() { return {{{0, -1, 0}, {1, -1, 0}, {0, 0, 1}}}; }

SymbolSpace::SymbolSpace(std::shared_ptr<const CosetTable> table, std::shared_ptr<const WeightModule> module,
                         SymbolSpaceOptions opts)
    : table_(std::move(table)), module_(std::move(module)), opts_(std::move(opts)) {
  const uint32_t r = module_->field().modulus();
  if (r == table_->q()) throw std::invalid_argument("modulus clash: q = r = " + std::to_string(r));
  if (r <= 3) throw std::invalid_argument("modulus must not divide 12");
  if (opts_.generator_set != 0 && opts_.generator_set != 1) throw std::invalid_argument("generator set must be 0 or 1");
  if (opts_.mode == RelationMode::Reduced)
    assemble_reduced();
  else
    assemble_raw();
  RrefOptions ro = opts_.rref;
  ro.want_kernel = opts_.want_kernel;
  auto res = rref(field(), relations_, ro);
  rank_ = res.rank;
  if (opts_.want_kernel) {
    kernel_ = std::move(res.kernel_basis);
    build_classes();
  }
}

void SymbolSpace::assemble_reduced() {
  const auto& H = symmetry_group();
  const auto& W = *module_;
  const PrimeField& f = field();
  const size_t n = table_->size(), dim = W.dim();
  for (const auto& s : H) sym_action_.push_back(W.action(s.m));

  orbit_of_.assign(n, UINT32_MAX);
  transversal_.assign(n, 0);
  size_t offset = 0;
  for (size_t x = 0; x < n; ++x) {
    if (orbit_of_[x] != UINT32_MAX) continue;
    const uint32_t o = static_cast<uint32_t>(orbit_rep_.size());
    orbit_rep_.push_back(x);
    orbit_offset_.push_back(offset);
    std::vector<size_t> stab;
    for (size_t k = 0; k < H.size(); ++k) {
      size_t y = table_->act(x, H[k].m);
      if (orbit_of_[y] == UINT32_MAX) {
        orbit_of_[y] = o;
        transversal_[y] = static_cast<uint32_t>(k);
      }
      if (y == x && k > 0) stab.push_back(k);
    }
    Matrix<PrimeField> proj;
    if (!stab.empty()) {
      Matrix<PrimeField> rel = zeros(f, dim, dim * stab.size());
      for (size_t s = 0; s < stab.size(); ++s) {
        const auto& a = sym_action_[stab[s]];
        const uint32_t chi = f.from_int(H[stab[s]].chi);
        for (size_t i = 0; i < dim; ++i)
          for (size_t j = 0; j < dim; ++j) {
            uint32_t v = f.mul(chi, a(i, j));
            if (i == j) v = f.sub(v, 1);
            rel(i, s * dim + j) = v;
          }
      }
      proj = left_kernel(f, rel);
      offset += proj.rows;
    } else {
      offset += dim;
    }
    orbit_proj_.push_back(std::move(proj));
  }

  const Mat3 tau = rotation_for(opts_.generator_set);
  const Mat3 tau_inv = mat3_inverse_unimodular(tau);
  const Mat3 tau_pow[3] = {mat3_identity(), tau, mat3_mul(tau, tau)};
  const Mat3 tau_inv_pow[3] = {mat3_identity(), tau_inv, mat3_mul(tau_inv, tau_inv)};
  // Module action of (transversal symmetry) * tau^{-i}, as sparse columns.
  std::vector<std::array<SparseCols, 3>> moved(H.size());
  for (size_t k = 0; k < H.size(); ++k)
    for (int i = 0; i < 3; ++i) moved[k][i] = sparse_columns(W.compute_action(mat3_mul(H[k].m, tau_inv_pow[i])));

  relations_ = SparseMatrix(0, offset);
  std::vector<bool> visited(n, false);
  std::vector<std::pair<uint32_t, uint32_t>> entries;
  std::vector<uint64_t> acc;
  for (size_t x = 0; x < n; ++x) {
    if (visited[x]) continue;
    size_t pts[3];
    for (int i = 0; i < 3; ++i) {
      pts[i] = table_->act(x, tau_pow[i]);
      visited[pts[i]] = true;
    }
    for (size_t j = 0; j < dim; ++j) {
      entries.clear();
      for (int i = 0; i < 3; ++i) {
        const size_t y = pts[i];
        const uint32_t o = orbit_of_[y], k = transversal_[y];
        const uint32_t chi = f.from_int(H[k].chi);
        const auto& col = moved[k][i][j];
        const auto& proj = orbit_proj_[o];
        const uint32_t base = static_cast<uint32_t>(orbit_offset_[o]);
        if (proj.rows == 0 && proj.cols == 0) {
          for (auto [row, val] : col) entries.push_back({base + row, f.mul(chi, val)});
        } else {
          for (size_t t = 0; t < proj.rows; ++t) {
            uint64_t s = 0;
            for (auto [row, val] : col) s += uint64_t(proj(t, row)) * val % f.modulus();
            uint32_t v = f.mul(chi, static_cast<uint32_t>(s % f.modulus()));
            if (v) entries.push_back({base + static_cast<uint32_t>(t), v});
          }
        }
      }
      relations_.append_row(f, entries);
    }
  }
}

void SymbolSpace::assemble_raw() {
  const auto& W = *module_;
  const PrimeField& f = field();
  const size_t n = table_->size(), dim = W.dim();
  relations_ = SparseMatrix(0, n * dim);
  std::vector<std::pair<uint32_t, uint32_t>> entries;
  auto block = [&](size_t point, size_t i) { return static_cast<uint32_t>(point * dim + i); };

  for (const Mat3& p : symmetry_generators(opts_.generator_set)) {
    const auto inv_cols = sparse_columns(W.compute_action(mat3_inverse_unimodular(p)));
    const uint32_t chi = f.from_int(chi_of(p));
    for (size_t x = 0; x < n; ++x) {
      const size_t y = table_->act(x, p);
      for (size_t j = 0; j < dim; ++j) {
        entries.clear();
        for (auto [row, val] : inv_cols[j]) entries.push_back({block(y, row), val});
        entries.push_back({block(x, j), f.neg(chi)});
        relations_.append_row(f, entries);
      }
    }
  }
  const Mat3 tau = rotation_for(opts_.generator_set);
  const Mat3 tau_inv = mat3_inverse_unimodular(tau);
  const Mat3 tau2 = mat3_mul(tau, tau);
  const auto c1 = sparse_columns(W.compute_action(tau_inv));
  const auto c2 = sparse_columns(W.compute_action(mat3_mul(tau_inv, tau_inv)));
  for (size_t x = 0; x < n; ++x) {
    const size_t y1 = table_->act(x, tau), y2 = table_->act(x, tau2);
    for (size_t j = 0; j < dim; ++j) {
      entries.clear();
      entries.push_back({block(x, j), 1});
      for (auto [row, val] : c1[j]) entries.push_back({block(y1, row), val});
      for (auto [row, val] : c2[j]) entries.push_back({block(y2, row), val});
      relations_.append_row(f, entries);
    }
  }
}

void SymbolSpace::build_classes() {
  const PrimeField& f = field();
  const size_t dim = module_->dim(), h3 = h3_dim();
  if (opts_.mode == RelationMode::Reduced) {
    for (size_t o = 0; o < orbit_rep_.size(); ++o) {
      const auto& proj = orbit_proj_[o];
      const bool trivial = proj.rows == 0 && proj.cols == 0;
      const size_t d = trivial ? dim : proj.rows;
      Matrix<PrimeField> ko = zeros(f, h3, d);
      for (size_t t = 0; t < d; ++t)
        for (size_t c = 0; c < h3; ++c) ko(c, t) = kernel_(orbit_offset_[o] + t, c);
      orbit_class_.push_back(trivial ? ko : multiply(f, ko, proj));
    }
  }

  // Greedy choice of generators whose classes are independent.
  std::vector<std::vector<uint32_t>> echelon;
  std::vector<size_t> pivots;
  std::vector<std::vector<uint32_t>> chosen;
  std::vector<uint32_t> e(dim, 0);
  for (size_t x = 0; x < table_->size() && lifts_.size() < h3; ++x) {
    if (opts_.mode == RelationMode::Reduced && orbit_rep_[orbit_of_[x]] != x) continue;
    for (size_t j = 0; j < dim && lifts_.size() < h3; ++j) {
      std::fill(e.begin(), e.end(), 0u);
      e[j] = 1;
      auto c = class_of(x, e);
      auto v = c;
      for (size_t t = 0; t < echelon.size(); ++t) {
        uint32_t a = v[pivots[t]];
        if (!a) continue;
        for (size_t u = 0; u < h3; ++u) v[u] = f.sub(v[u], f.mul(a, echelon[t][u]));
      }
      size_t p = 0;
      while (p < h3 && !v[p]) ++p;
      if (p == h3) continue;
      uint32_t inv = f.inv(v[p]);
      for (auto& a : v) a = f.mul(a, inv);
      for (size_t t = 0; t < echelon.size(); ++t) {
        uint32_t a = echelon[t][p];
        if (!a) continue;
        for (size_t u = 0; u < h3; ++u) echelon[t][u] = f.sub(echelon[t][u], f.mul(a, v[u]));
      }
      echelon.push_back(std::move(v));
      pivots.push_back(p);
      lifts_.push_back({x, j});
      chosen.push_back(std::move(c));
    }
  }
  if (lifts_.size() != h3) throw std::logic_error("generator classes do not span the cokernel");
  Matrix<PrimeField> b = zeros(f, h3, h3);
  for (size_t t = 0; t < h3; ++t)
    for (size_t u = 0; u < h3; ++u) b(u, t) = chosen[t][u];
  lift_inv_ = inverse(f, b);
}

std::vector<uint32_t> SymbolSpace::class_of(size_t point, const std::vector<uint32_t>& m) const {
  if (kernel_.rows == 0 && h3_dim() > 0) throw std::logic_error("symbol space was built without its kernel");
  const PrimeField& f = field();
  const size_t dim = module_->dim(), h3 = h3_dim();
  std::vector<uint32_t> out(h3, 0);
  if (opts_.mode == RelationMode::Raw) {
    for (size_t j = 0; j < dim; ++j) {
      if (!m[j]) continue;
      for (size_t c = 0; c < h3; ++c) out[c] = f.add(out[c], f.mul(m[j], kernel_(point * dim + j, c)));
    }
    return out;
  }
  const uint32_t o = orbit_of_[point], k = transversal_[point];
  auto v = apply(f, sym_action_[k], m);
  if (symmetry_group()[k].chi < 0)
    for (auto& a : v) a = f.neg(a);
  return apply(f, orbit_class_[o], v);
}

size_t h3_dim(uint32_t q, unsigned h, uint32_t r, const SymbolSpaceOptions& opts) {
  auto table = std::make_shared<CosetTable>(q);
  auto module = std::make_shared<WeightModule>(h, PrimeField(r));
  SymbolSpaceOptions o = opts;
  o.want_kernel = false;
  return SymbolSpace(table, module, o).h3_dim();
}

}  // namespace arithcoh
