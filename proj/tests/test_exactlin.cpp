#include <algorithm>
#include <numeric>
#include <random>

#include "arithcoh/crt.hpp"
#include "arithcoh/dense_matrix.hpp"
#include "arithcoh/eigen.hpp"
#include "arithcoh/ext_field.hpp"
#include "arithcoh/poly.hpp"
#include "arithcoh/rref.hpp"
#include "doctest.h"

using namespace arithcoh;

namespace {

// Cross-multiplying elimination with no inverses: row_i <- a*row_i - b*row_p.
size_t fraction_free_rank(const PrimeField& f, Matrix<PrimeField> m) {
  size_t r = 0;
  for (size_t c = 0; c < m.cols && r < m.rows; ++c) {
    size_t p = r;
    while (p < m.rows && m(p, c) == 0) ++p;
    if (p == m.rows) continue;
    for (size_t j = 0; j < m.cols; ++j) std::swap(m(p, j), m(r, j));
    for (size_t i = r + 1; i < m.rows; ++i) {
      uint32_t a = m(r, c), b = m(i, c);
      for (size_t j = 0; j < m.cols; ++j) m(i, j) = f.sub(f.mul(a, m(i, j)), f.mul(b, m(r, j)));
    }
    ++r;
  }
  return r;
}

Matrix<PrimeField> random_matrix(const PrimeField& f, size_t r, size_t c, double density, std::mt19937_64& rng) {
  Matrix<PrimeField> m = zeros(f, r, c);
  std::uniform_real_distribution<double> u(0, 1);
  for (auto& e : m.a)
    if (u(rng) < density) e = static_cast<uint32_t>(1 + rng() % (f.modulus() - 1));
  return m;
}

// det(xI - m) by summing over all permutations.
Poly<PrimeField> leibniz_charpoly(const PrimeField& f, const Matrix<PrimeField>& m) {
  PolyRing<PrimeField> ring(f);
  const size_t n = m.rows;
  std::vector<size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Poly<PrimeField> total = ring.zero();
  do {
    int sign = 1;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) sign = -sign;
    Poly<PrimeField> term = ring.constant(f.from_int(sign));
    for (size_t i = 0; i < n; ++i) {
      Poly<PrimeField> entry = ring.constant(f.neg(m(i, perm[i])));
      if (perm[i] == i) entry = ring.add(entry, ring.x());
      term = ring.mul(term, entry);
    }
    total = ring.add(total, term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

std::vector<Poly<PrimeField>> monic_polys(const PolyRing<PrimeField>& ring, unsigned deg) {
  const uint32_t p = ring.field().modulus();
  std::vector<Poly<PrimeField>> out;
  uint64_t total = 1;
  for (unsigned i = 0; i < deg; ++i) total *= p;
  for (uint64_t n = 0; n < total; ++n) {
    std::vector<uint32_t> c;
    uint64_t t = n;
    for (unsigned i = 0; i < deg; ++i) {
      c.push_back(static_cast<uint32_t>(t % p));
      t /= p;
    }
    c.push_back(1);
    out.push_back(ring.make(c));
  }
  return out;
}

}  // namespace

TEST_CASE("prime field rejects composite moduli") {
  CHECK_THROWS(PrimeField(150));
  CHECK_NOTHROW(PrimeField(149));
  PrimeField f(149);
  CHECK(f.mul(f.inv(17), 17) == 1);
  CHECK(f.to_signed(148) == -1);
}

TEST_CASE("extension field axioms on random triples") {
  PrimeField base(149);
  for (unsigned d : {1u, 2u, 3u, 5u}) {
    ExtField k = ExtField::with_degree(base, d);
    std::mt19937_64 rng(d);
    for (int t = 0; t < 50; ++t) {
      auto a = k.random(rng), b = k.random(rng), c = k.random(rng);
      CHECK(k.mul(a, k.add(b, c)) == k.add(k.mul(a, b), k.mul(a, c)));
      CHECK(k.mul(k.mul(a, b), c) == k.mul(a, k.mul(b, c)));
      CHECK(k.mul(a, b) == k.mul(b, a));
      if (!k.is_zero(a)) CHECK(k.mul(a, k.inv(a)) == k.one());
      CHECK(k.pth_root(k.frobenius(a)) == a);
    }
  }
  CHECK_THROWS(ExtField(base, PolyRing<PrimeField>(base).make({148, 0, 1})));
}

TEST_CASE("rref small cases") {
  PrimeField f(149);
  auto id = SparseMatrix::from_dense(identity(f, 3));
  auto r = rref(f, id);
  CHECK(r.rank == 3);
  CHECK(r.kernel_basis.cols == 0);
  auto z = SparseMatrix::from_dense(zeros(f, 3, 3));
  r = rref(f, z);
  CHECK(r.rank == 0);
  CHECK(r.kernel_basis.cols == 3);
  CHECK(r.kernel_basis == identity(f, 3));
}

TEST_CASE("rref rank matches fraction-free oracle on random 6x6") {
  PrimeField f(149);
  std::mt19937_64 rng(7);
  for (int t = 0; t < 100; ++t) {
    auto m = random_matrix(f, 6, 6, t % 2 ? 0.3 : 0.8, rng);
    if (t % 3 == 0)
      for (size_t j = 0; j < 6; ++j) m(5, j) = f.add(m(0, j), m(1, j));
    auto r = rref(f, SparseMatrix::from_dense(m));
    CHECK(r.rank == fraction_free_rank(f, m));
  }
}

TEST_CASE("rank-nullity and kernel annihilation on random sparse matrices") {
  PrimeField f(151);
  std::mt19937_64 rng(11);
  struct Size {
    size_t r, c;
    double density;
  };
  for (Size s : {Size{10, 8, 0.3}, Size{40, 30, 0.1}, Size{30, 60, 0.05}, Size{120, 100, 0.03}}) {
    for (int t = 0; t < 200; ++t) {
      auto m = random_matrix(f, s.r, s.c, s.density, rng);
      RrefOptions opts;
      opts.chunk_rows = 1 + t % 17;
      opts.markowitz_max_cost = (t % 3 == 0) ? 0 : (t % 3 == 1 ? 4 : 100000);
      auto sm = SparseMatrix::from_dense(m);
      auto r = rref(f, sm, opts);
      REQUIRE(r.rank + r.kernel_basis.cols == s.c);
      CHECK(r.rank == rank(f, m));
      CHECK(is_zero_matrix(f, multiply(f, m, r.kernel_basis)));
      CHECK(rank(f, r.kernel_basis) == r.kernel_basis.cols);
    }
  }
}

TEST_CASE("rref pivots agree with dense echelon form") {
  PrimeField f(163);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    auto m = random_matrix(f, 12, 15, 0.2, rng);
    auto d = m;
    auto piv = rref_inplace(f, d);
    auto r = rref(f, SparseMatrix::from_dense(m));
    CHECK(r.rank == piv.size());
  }
}

TEST_CASE("charpoly basic identities") {
  PrimeField f(149);
  PolyRing<PrimeField> ring(f);
  Matrix<PrimeField> d = zeros(f, 2, 2);
  d(0, 0) = 1;
  d(1, 1) = 2;
  CHECK(charpoly(f, d) == ring.mul(ring.make({f.neg(1), 1}), ring.make({f.neg(2), 1})));

  // Companion matrix of x^3 + 2x + 5.
  Matrix<PrimeField> c = zeros(f, 3, 3);
  c(1, 0) = 1;
  c(2, 1) = 1;
  c(0, 2) = f.neg(5);
  c(1, 2) = f.neg(2);
  CHECK(charpoly(f, c) == ring.make({5, 2, 0, 1}));
  CHECK_THROWS(charpoly(f, zeros(f, 2, 3)));
}

TEST_CASE("charpoly matches Leibniz expansion and is similarity invariant") {
  PrimeField f(149);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    auto m = random_matrix(f, 4, 4, t % 2 ? 0.4 : 1.0, rng);
    auto cp = charpoly(f, m);
    CHECK(cp.degree() == 4);
    CHECK(cp.leading() == 1);
    CHECK(cp == leibniz_charpoly(f, m));
    Matrix<PrimeField> p;
    do p = random_matrix(f, 4, 4, 1.0, rng);
    while (rank(f, p) < 4);
    CHECK(charpoly(f, multiply(f, multiply(f, p, m), inverse(f, p))) == cp);
  }
  auto big = random_matrix(f, 9, 9, 0.5, rng);
  CHECK(is_zero_matrix(f, eval_poly(f, charpoly(f, big), big)));
}

TEST_CASE("irreducibility examples") {
  PolyRing<PrimeField> r3(PrimeField(3)), r5(PrimeField(5)), r2(PrimeField(2));
  CHECK(r3.is_irreducible(r3.make({1, 0, 1})));
  CHECK_FALSE(r5.is_irreducible(r5.make({4, 0, 1})));
  CHECK(r2.is_irreducible(r2.make({1, 1, 0, 1})));
  CHECK_THROWS(r5.is_irreducible(r5.make({3})));
}

TEST_CASE("irreducibility agrees with exhaustive factor search") {
  for (uint32_t p : {2u, 3u, 5u}) {
    PolyRing<PrimeField> ring{PrimeField(p)};
    std::vector<Poly<PrimeField>> reducible;
    for (unsigned a = 1; a <= 2; ++a)
      for (auto& g : monic_polys(ring, a))
        for (auto& h : monic_polys(ring, 3 - a)) reducible.push_back(ring.mul(g, h));
    for (auto& f : monic_polys(ring, 3)) {
      bool factors = std::find(reducible.begin(), reducible.end(), f) != reducible.end();
      CHECK(ring.is_irreducible(f) == !factors);
    }
    // Degree 4 takes the distinct-degree route.
    std::vector<Poly<PrimeField>> red4;
    for (unsigned a = 1; a <= 2; ++a)
      for (auto& g : monic_polys(ring, a))
        for (auto& h : monic_polys(ring, 4 - a)) red4.push_back(ring.mul(g, h));
    for (auto& f : monic_polys(ring, 4)) {
      bool factors = std::find(red4.begin(), red4.end(), f) != red4.end();
      CHECK(ring.is_irreducible(f) == !factors);
    }
  }
}

TEST_CASE("factorization reassembles the input") {
  PrimeField f(149);
  PolyRing<PrimeField> ring(f);
  std::mt19937_64 rng(9);
  for (int t = 0; t < 40; ++t) {
    Poly<PrimeField> g = ring.one();
    for (int k = 0; k < 4; ++k) {
      std::vector<uint32_t> c(1 + rng() % 4);
      for (auto& v : c) v = static_cast<uint32_t>(rng() % 149);
      c.push_back(1);
      auto h = ring.make(c);
      g = ring.mul(g, h);
      if (k == 0) g = ring.mul(g, h);
    }
    auto fac = ring.factor(g);
    Poly<PrimeField> prod = ring.one();
    for (auto& pf : fac) {
      CHECK(ring.is_irreducible(pf.factor));
      for (unsigned i = 0; i < pf.multiplicity; ++i) prod = ring.mul(prod, pf.factor);
    }
    CHECK(prod == ring.monic(g));
  }
}

TEST_CASE("crt reconstruction") {
  CHECK(crt_reconstruct({{2, 149}, {2, 151}}, 10) == 2);
  CHECK(crt_reconstruct({{148, 149}, {150, 151}}, 10) == -1);
  CHECK_FALSE(crt_reconstruct({{5, 149}, {7, 151}}, 10).has_value());
  CHECK_THROWS(crt_reconstruct({{1, 149}}, 100));
  CHECK_THROWS(crt_reconstruct({{1, 149}, {1, 298}}, 1));
  std::mt19937_64 rng(1);
  for (int t = 0; t < 500; ++t) {
    int64_t n = static_cast<int64_t>(rng() % 2001) - 1000;
    std::vector<Residue> rs;
    for (uint64_t m : {149u, 151u, 163u}) rs.push_back({((n % int64_t(m)) + int64_t(m)) % int64_t(m), m});
    CHECK(crt_reconstruct(rs, 1000) == n);
  }
  auto c = crt_combine({{PrimeField(149).inv(3), 149}, {PrimeField(151).inv(3), 151}, {PrimeField(163).inv(3), 163}});
  auto q = rational_reconstruct(c);
  REQUIRE(q.has_value());
  CHECK(q->first == 1);
  CHECK(q->second == 3);
}

TEST_CASE("eigenspaces") {
  PrimeField f(149);
  Matrix<PrimeField> d = zeros(f, 3, 3);
  d(0, 0) = 3;
  d(1, 1) = 3;
  d(2, 2) = 7;
  auto es = eigenspaces(f, d, 6);
  REQUIRE(es.size() == 2);
  for (auto& e : es) {
    REQUIRE(e.split);
    uint32_t lam = e.eigenvalue[0];
    CHECK((lam == 3 || lam == 7));
    CHECK(e.vectors.cols == (lam == 3 ? 2u : 1u));
    CHECK(e.algebraic_multiplicity == e.vectors.cols);
  }

  auto z = eigenspaces(f, zeros(f, 4, 4), 6);
  REQUIRE(z.size() == 1);
  CHECK(es[0].field->is_zero(z[0].eigenvalue) == true);
  CHECK(z[0].vectors.cols == 4);
}

TEST_CASE("irreducible 2x2 splits into a conjugate pair over the quadratic extension") {
  PrimeField f(149);
  // [[0,-2],[1,0]]: x^2 + 2, and -2 is a non-residue mod 149.
  Matrix<PrimeField> m = zeros(f, 2, 2);
  m(0, 1) = f.neg(2);
  m(1, 0) = 1;
  auto es = eigenspaces(f, m, 6);
  REQUIRE(es.size() == 1);
  REQUIRE(es[0].split);
  const ExtField& k = *es[0].field;
  CHECK(k.degree() == 2);
  // Exhaustive root search over all of F_{149^2}.
  auto cp = lift_poly(k, charpoly(f, m));
  PolyRing<ExtField> ring(k);
  std::vector<ExtField::Elem> roots;
  for (uint32_t a = 0; a < 149; ++a)
    for (uint32_t b = 0; b < 149; ++b) {
      ExtField::Elem e{a, b};
      if (k.is_zero(ring.eval(cp, e))) roots.push_back(e);
    }
  auto conj = es[0].conjugates;
  std::sort(conj.begin(), conj.end());
  CHECK(roots == conj);
  auto mk = lift_matrix(k, m);
  auto v = es[0].vectors;
  REQUIRE(v.cols == 1);
  auto mv = multiply(k, mk, v);
  for (size_t i = 0; i < 2; ++i) CHECK(mv(i, 0) == k.mul(es[0].eigenvalue, v(i, 0)));
  CHECK_FALSE(eigenspaces(f, m, 1)[0].split);
}
