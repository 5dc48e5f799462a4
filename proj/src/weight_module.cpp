#include "arithcoh/weight_module.hpp"

#include <functional>
#include <stdexcept>

#include "arithcoh/rref.hpp"

namespace arithcoh {
namespace {

size_t mono_index(const Exps& e, unsigned d) {
  const unsigned a = e[0], b = e[1];
  return static_cast<size_t>((d - a) * (d - a + 1) / 2 + (d - a - b));
}

size_t mono_count(unsigned d) { return static_cast<size_t>(d + 1) * (d + 2) / 2; }

}  // namespace

std::vector<Exps> monomials(unsigned h) {
  std::vector<Exps> out;
  for (unsigned a = h + 1; a-- > 0;)
    for (unsigned b = h - a + 1; b-- > 0;) out.push_back({a, b, h - a - b});
  return out;
}

Matrix<PrimeField> sym_action(const PrimeField& f, const Mat3& g, unsigned h) {
  const auto mono = monomials(h);
  Matrix<PrimeField> out = zeros(f, mono.size(), mono.size());
  for (size_t col = 0; col < mono.size(); ++col) {
    std::vector<uint32_t> p{1};
    unsigned d = 0;
    for (int j = 0; j < 3; ++j) {
      for (unsigned t = 0; t < mono[col][j]; ++t) {
        std::vector<uint32_t> q(mono_count(d + 1), 0);
        const auto src = monomials(d);
        for (size_t s = 0; s < src.size(); ++s) {
          if (!p[s]) continue;
          for (int i = 0; i < 3; ++i) {
            uint32_t gij = f.from_int(g[i][j]);
            if (!gij) continue;
            Exps e = src[s];
            ++e[i];
            size_t k = mono_index(e, d + 1);
            q[k] = f.add(q[k], f.mul(p[s], gij));
          }
        }
        p.swap(q);
        ++d;
      }
    }
    for (size_t row = 0; row < mono.size(); ++row) out(row, col) = p[row];
  }
  return out;
}

Mat3 wedge2_action(const Mat3& g) {
  static constexpr int idx[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  Mat3 w{};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      int i = idx[a][0], j = idx[a][1], k = idx[b][0], l = idx[b][1];
      w[a][b] = g[i][k] * g[j][l] - g[i][l] * g[j][k];
    }
  return w;
}

WeightModule::WeightModule(unsigned h, const PrimeField& f) : h_(h), f_(f), mono_(monomials(h)) {
  if (f.modulus() <= h + 2)
    throw std::invalid_argument("modulus " + std::to_string(f.modulus()) + " must exceed h+2 = " + std::to_string(h + 2));
  for (auto& x : mono_)
    for (auto& y : mono_) ambient_.push_back({x, y});
  const size_t amb = ambient_.size();
  standard_pos_.assign(amb, -1);
  for (size_t i = 0; i < amb; ++i)
    if (!(ambient_[i].x[0] > 0 && ambient_[i].y[2] > 0)) {
      standard_pos_[i] = static_cast<int64_t>(standard_.size());
      standard_.push_back(i);
    }

  // Normal forms, memoized; x1*y23 -> x2*y13 - x3*y12 lowers the x1 exponent.
  nf_.resize(amb);
  std::vector<bool> done(amb, false);
  std::function<void(size_t)> normal_form = [&](size_t i) {
    if (done[i]) return;
    const auto& m = ambient_[i];
    if (standard_pos_[i] >= 0) {
      nf_[i] = {{static_cast<uint32_t>(standard_pos_[i]), 1u}};
    } else {
      Exps x1 = m.x, y1 = m.y, x2 = m.x, y2 = m.y;
      --x1[0];
      ++x1[1];
      --y1[2];
      ++y1[1];
      --x2[0];
      ++x2[2];
      --y2[2];
      ++y2[0];
      size_t a = ambient_index(x1, y1), b = ambient_index(x2, y2);
      normal_form(a);
      normal_form(b);
      std::map<uint32_t, uint32_t> acc;
      for (auto [k, v] : nf_[a]) acc[k] = f_.add(acc[k], v);
      for (auto [k, v] : nf_[b]) acc[k] = f_.sub(acc[k], v);
      for (auto [k, v] : acc)
        if (v) nf_[i].push_back({k, v});
    }
    done[i] = true;
  };
  for (size_t i = 0; i < amb; ++i) normal_form(i);

  const size_t expected = static_cast<size_t>(h + 1) * (h + 1) * (h + 1);
  Matrix<PrimeField> k;
  if (h == 0) {
    k = identity(f_, 1);
  } else {
    auto res = rref(f_, SparseMatrix::from_dense(contraction()));
    k = std::move(res.kernel_basis);
  }
  if (k.cols != expected || standard_.size() != expected)
    throw std::runtime_error("contraction kernel has dimension " + std::to_string(k.cols) + ", expected " +
                             std::to_string(expected));
  Matrix<PrimeField> nk = zeros(f_, expected, expected);
  for (size_t i = 0; i < amb; ++i)
    for (auto [pos, v] : nf_[i])
      for (size_t c = 0; c < expected; ++c)
        if (k(i, c)) nk(pos, c) = f_.add(nk(pos, c), f_.mul(v, k(i, c)));
  if (rank(f_, nk) == expected) {
    basis_ = multiply(f_, k, inverse(f_, nk));
    return;
  }
  // Small characteristic can make the normal-form projection degenerate on the
  // kernel; fall back to coordinates on a set of pivot rows of the kernel basis.
  use_normal_form_ = false;
  auto kt = transpose(k);
  auto piv = rref_inplace(f_, kt);
  select_.assign(piv.begin(), piv.end());
  Matrix<PrimeField> ks = zeros(f_, expected, expected);
  for (size_t i = 0; i < expected; ++i)
    for (size_t c = 0; c < expected; ++c) ks(i, c) = k(select_[i], c);
  basis_ = multiply(f_, k, inverse(f_, ks));
}

size_t WeightModule::ambient_index(const Exps& x, const Exps& y) const {
  return mono_index(x, h_) * mono_.size() + mono_index(y, h_);
}

Matrix<PrimeField> WeightModule::ambient_action(const Mat3& g) const {
  auto sx = sym_action(f_, g, h_);
  auto sy = sym_action(f_, wedge2_action(g), h_);
  const size_t n = mono_.size();
  Matrix<PrimeField> out = zeros(f_, n * n, n * n);
  for (size_t i = 0; i < n; ++i)
    for (size_t a = 0; a < n; ++a) {
      if (!sx(i, a)) continue;
      for (size_t j = 0; j < n; ++j)
        for (size_t b = 0; b < n; ++b) out(i * n + j, a * n + b) = f_.mul(sx(i, a), sy(j, b));
    }
  return out;
}

Matrix<PrimeField> WeightModule::contraction() const {
  if (h_ == 0) return zeros(f_, 0, 1);
  const auto lower = monomials(h_ - 1);
  const size_t n1 = lower.size();
  Matrix<PrimeField> c = zeros(f_, n1 * n1, ambient_.size());
  // (x index, y index, sign): x1*y23, x2*y13, x3*y12.
  const int terms[3][3] = {{0, 2, 1}, {1, 1, -1}, {2, 0, 1}};
  for (size_t col = 0; col < ambient_.size(); ++col) {
    const auto& m = ambient_[col];
    for (auto& t : terms) {
      unsigned ex = m.x[t[0]], ey = m.y[t[1]];
      if (!ex || !ey) continue;
      Exps x = m.x, y = m.y;
      --x[t[0]];
      --y[t[1]];
      size_t row = mono_index(x, h_ - 1) * n1 + mono_index(y, h_ - 1);
      c(row, col) = f_.add(c(row, col), f_.from_int(int64_t(t[2]) * ex * ey));
    }
  }
  return c;
}

Matrix<PrimeField> WeightModule::compute_action(const Mat3& g) const {
  if (f_.from_int(mat3_det(g)) == 0) throw std::domain_error("determinant divisible by the modulus");
  const size_t n = mono_.size(), d = dim();
  Matrix<PrimeField> out = zeros(f_, d, d);
  if (!use_normal_form_) {
    auto full = multiply(f_, ambient_action(g), basis_);
    for (size_t i = 0; i < d; ++i)
      for (size_t mu = 0; mu < d; ++mu) out(i, mu) = full(select_[i], mu);
    return out;
  }
  auto sx = sym_action(f_, g, h_);
  auto sy = sym_action(f_, wedge2_action(g), h_);
  std::vector<uint64_t> col(d);
  for (size_t mu = 0; mu < d; ++mu) {
    const size_t s = standard_[mu];
    const size_t a = s / n, b = s % n;
    std::fill(col.begin(), col.end(), 0);
    for (size_t i = 0; i < n; ++i) {
      if (!sx(i, a)) continue;
      for (size_t j = 0; j < n; ++j) {
        if (!sy(j, b)) continue;
        const uint64_t c = f_.mul(sx(i, a), sy(j, b));
        for (auto [pos, v] : nf_[i * n + j]) col[pos] = (col[pos] + c * v) % f_.modulus();
      }
    }
    for (size_t r = 0; r < d; ++r) out(r, mu) = static_cast<uint32_t>(col[r]);
  }
  return out;
}

const Matrix<PrimeField>& WeightModule::action(const Mat3& g) const {
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = cache_.find(g);
    if (it != cache_.end()) return it->second;
  }
  Matrix<PrimeField> m = compute_action(g);
  std::lock_guard<std::mutex> lock(cache_mutex_);
  return cache_.emplace(g, std::move(m)).first->second;
}

}  // namespace arithcoh
