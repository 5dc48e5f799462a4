#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "arithcoh/poly.hpp"

namespace arithcoh {

// Row-major dense matrix over a field F.
template <class F>
struct Matrix {
  using Elem = typename F::Elem;
  size_t rows = 0, cols = 0;
  std::vector<Elem> a;

  Matrix() = default;
  Matrix(size_t r, size_t c, const Elem& fill) : rows(r), cols(c), a(r * c, fill) {}

  Elem& operator()(size_t i, size_t j) { return a[i * cols + j]; }
  const Elem& operator()(size_t i, size_t j) const { return a[i * cols + j]; }
  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
};

template <class F>
Matrix<F> zeros(const F& f, size_t r, size_t c) {
  return Matrix<F>(r, c, f.zero());
}

template <class F>
Matrix<F> identity(const F& f, size_t n) {
  Matrix<F> m = zeros(f, n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = f.one();
  return m;
}

template <class F>
Matrix<F> multiply(const F& f, const Matrix<F>& x, const Matrix<F>& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matrix shape mismatch in product");
  Matrix<F> out = zeros(f, x.rows, y.cols);
  for (size_t i = 0; i < x.rows; ++i)
    for (size_t k = 0; k < x.cols; ++k) {
      const auto& s = x(i, k);
      if (f.is_zero(s)) continue;
      for (size_t j = 0; j < y.cols; ++j) out(i, j) = f.add(out(i, j), f.mul(s, y(k, j)));
    }
  return out;
}

template <class F>
Matrix<F> add(const F& f, const Matrix<F>& x, const Matrix<F>& y) {
  Matrix<F> out = x;
  for (size_t i = 0; i < out.a.size(); ++i) out.a[i] = f.add(x.a[i], y.a[i]);
  return out;
}

template <class F>
Matrix<F> sub(const F& f, const Matrix<F>& x, const Matrix<F>& y) {
  Matrix<F> out = x;
  for (size_t i = 0; i < out.a.size(); ++i) out.a[i] = f.sub(x.a[i], y.a[i]);
  return out;
}

template <class F>
Matrix<F> scale(const F& f, const Matrix<F>& x, const typename F::Elem& s) {
  Matrix<F> out = x;
  for (auto& e : out.a) e = f.mul(e, s);
  return out;
}

template <class F>
Matrix<F> transpose(const Matrix<F>& x) {
  Matrix<F> out;
  out.rows = x.cols;
  out.cols = x.rows;
  out.a.resize(x.a.size());
  for (size_t i = 0; i < x.rows; ++i)
    for (size_t j = 0; j < x.cols; ++j) out(j, i) = x(i, j);
  return out;
}

template <class F>
bool is_zero_matrix(const F& f, const Matrix<F>& x) {
  for (const auto& e : x.a)
    if (!f.is_zero(e)) return false;
  return true;
}

template <class F>
std::vector<typename F::Elem> apply(const F& f, const Matrix<F>& m, const std::vector<typename F::Elem>& v) {
  if (v.size() != m.cols) throw std::invalid_argument("vector length mismatch");
  std::vector<typename F::Elem> out(m.rows, f.zero());
  for (size_t i = 0; i < m.rows; ++i)
    for (size_t j = 0; j < m.cols; ++j)
      if (!f.is_zero(v[j])) out[i] = f.add(out[i], f.mul(m(i, j), v[j]));
  return out;
}

// Columns [c0, c0+n) of m.
template <class F>
Matrix<F> column_block(const Matrix<F>& m, size_t c0, size_t n) {
  Matrix<F> out;
  out.rows = m.rows;
  out.cols = n;
  out.a.reserve(m.rows * n);
  for (size_t i = 0; i < m.rows; ++i)
    for (size_t j = 0; j < n; ++j) out.a.push_back(m(i, c0 + j));
  return out;
}

// Reduced row echelon form in place; returns pivot columns.
template <class F>
std::vector<size_t> rref_inplace(const F& f, Matrix<F>& m) {
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t c = 0; c < m.cols && r < m.rows; ++c) {
    size_t p = r;
    while (p < m.rows && f.is_zero(m(p, c))) ++p;
    if (p == m.rows) continue;
    if (p != r)
      for (size_t j = 0; j < m.cols; ++j) std::swap(m(p, j), m(r, j));
    auto inv = f.inv(m(r, c));
    for (size_t j = c; j < m.cols; ++j) m(r, j) = f.mul(m(r, j), inv);
    for (size_t i = 0; i < m.rows; ++i) {
      if (i == r || f.is_zero(m(i, c))) continue;
      auto t = m(i, c);
      for (size_t j = c; j < m.cols; ++j) m(i, j) = f.sub(m(i, j), f.mul(t, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class F>
size_t rank(const F& f, Matrix<F> m) {
  return rref_inplace(f, m).size();
}

// Basis of the right kernel, as the columns of the returned matrix.
template <class F>
Matrix<F> kernel(const F& f, Matrix<F> m) {
  auto piv = rref_inplace(f, m);
  std::vector<bool> is_piv(m.cols, false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<size_t> free;
  for (size_t c = 0; c < m.cols; ++c)
    if (!is_piv[c]) free.push_back(c);
  Matrix<F> k = zeros(f, m.cols, free.size());
  for (size_t t = 0; t < free.size(); ++t) {
    k(free[t], t) = f.one();
    for (size_t i = 0; i < piv.size(); ++i) k(piv[i], t) = f.neg(m(i, free[t]));
  }
  return k;
}

// Basis of the left kernel {y : y m = 0}, as the rows of the returned matrix.
template <class F>
Matrix<F> left_kernel(const F& f, const Matrix<F>& m) {
  return transpose(kernel(f, transpose(m)));
}

template <class F>
Matrix<F> inverse(const F& f, const Matrix<F>& m) {
  if (m.rows != m.cols) throw std::invalid_argument("inverse of a non-square matrix");
  const size_t n = m.rows;
  Matrix<F> aug = zeros(f, n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = f.one();
  }
  auto piv = rref_inplace(f, aug);
  if (piv.size() < n || (n > 0 && piv[n - 1] != n - 1)) throw std::domain_error("matrix is singular");
  Matrix<F> out = zeros(f, n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return out;
}

// Characteristic polynomial det(xI - m) via reduction to Hessenberg form.
template <class F>
Poly<F> charpoly(const F& f, const Matrix<F>& m) {
  if (m.rows != m.cols) throw std::invalid_argument("characteristic polynomial of a non-square matrix");
  const size_t n = m.rows;
  Matrix<F> h = m;
  for (size_t k = 1; k + 1 < n; ++k) {
    size_t i = k;
    while (i < n && f.is_zero(h(i, k - 1))) ++i;
    if (i == n) continue;
    if (i != k) {
      for (size_t j = 0; j < n; ++j) std::swap(h(i, j), h(k, j));
      for (size_t j = 0; j < n; ++j) std::swap(h(j, i), h(j, k));
    }
    auto tinv = f.inv(h(k, k - 1));
    for (size_t r = k + 1; r < n; ++r) {
      auto u = f.mul(h(r, k - 1), tinv);
      if (f.is_zero(u)) continue;
      for (size_t j = 0; j < n; ++j) h(r, j) = f.sub(h(r, j), f.mul(u, h(k, j)));
      for (size_t j = 0; j < n; ++j) h(j, k) = f.add(h(j, k), f.mul(u, h(j, r)));
    }
  }
  PolyRing<F> ring(f);
  std::vector<Poly<F>> p{ring.one()};
  for (size_t k = 0; k < n; ++k) {
    Poly<F> next = ring.mul(ring.make({f.neg(h(k, k)), f.one()}), p[k]);
    auto t = f.one();
    for (size_t i = 1; i <= k; ++i) {
      t = f.mul(t, h(k - i + 1, k - i));
      auto coef = f.mul(t, h(k - i, k));
      if (!f.is_zero(coef)) next = ring.sub(next, ring.scale(p[k - i], coef));
    }
    p.push_back(std::move(next));
  }
  return p[n];
}

// g(m) by Horner's rule.
template <class F>
Matrix<F> eval_poly(const F& f, const Poly<F>& g, const Matrix<F>& m) {
  Matrix<F> out = zeros(f, m.rows, m.cols);
  for (size_t i = g.c.size(); i-- > 0;) {
    out = multiply(f, out, m);
    for (size_t d = 0; d < m.rows; ++d) out(d, d) = f.add(out(d, d), g.c[i]);
  }
  return out;
}

// Image of a prime-field matrix in an extension.
template <class K, class F>
Matrix<K> lift_matrix(const K& k, const Matrix<F>& m) {
  Matrix<K> out = zeros(k, m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i) out.a[i] = k.from_base(m.a[i]);
  return out;
}

}  // namespace arithcoh
