#include <numeric>

#include "arithcoh/hecke.hpp"
#include "arithcoh/rigidity.hpp"
#include "doctest.h"

using namespace arithcoh;

namespace {

const PacketLift& lift89() {
  static const PacketLift e = lift_cuspidal(89, 0);
  return e;
}

const PacketLift& lift61() {
  static const PacketLift e = lift_cuspidal(61, 0);
  return e;
}

// All elements of F_p[t]/(f).
std::vector<ExtField::Elem> elements(const ExtField& k) {
  std::vector<ExtField::Elem> out{k.zero()};
  for (unsigned i = 0; i < k.degree(); ++i) {
    std::vector<ExtField::Elem> next;
    for (auto& e : out)
      for (uint32_t c = 0; c < k.characteristic(); ++c) {
        auto x = e;
        x[i] = c;
        next.push_back(x);
      }
    out = std::move(next);
  }
  return out;
}

// Whether the lifted cubic has a root over some residue field, by exhaustion.
bool has_residue_root(const PacketLift& e, uint32_t ell, uint32_t p) {
  PrimeField f(p);
  PolyRing<PrimeField> ring(f);
  std::vector<uint32_t> m;
  for (auto c : e.minimal_poly) m.push_back(f.from_int(c));
  for (auto& fac : ring.factor(ring.make(m))) {
    ExtField k(f, fac.factor);
    auto t = k.generator();
    auto val = [&](unsigned j) {
      auto out = k.zero(), pw = k.one();
      for (auto& c : e.values.at({ell, j})) {
        out = k.add(out, k.mul(k.from_int(c.num), k.mul(pw, k.inv(k.from_int(c.den)))));
        pw = k.mul(pw, t);
      }
      return out;
    };
    auto l = k.from_int(ell);
    std::vector<ExtField::Elem> coef{k.one(), k.neg(val(1)), k.mul(l, val(2)), k.neg(k.mul(k.pow(l, 3), val(3)))};
    for (auto& x : elements(k)) {
      auto s = k.zero();
      for (size_t i = coef.size(); i-- > 0;) s = k.add(k.mul(s, x), coef[i]);
      if (k.is_zero(s)) return true;
    }
  }
  return false;
}

// Conjugate of a quadratic lift: theta -> -m1 - theta.
PacketLift conjugate(const PacketLift& e) {
  REQUIRE(e.dimension() == 2);
  PacketLift out = e;
  const int64_t m1 = e.minimal_poly[1];
  for (auto& [key, v] : out.values) {
    // c0 + c1 (-m1 - theta) = (c0 - m1 c1) - c1 theta, all over a common c1.den.
    Rational c0 = v[0], c1 = v[1];
    Rational a{c0.num * c1.den - m1 * c1.num * c0.den, c0.den * c1.den};
    int64_t g = std::gcd(std::abs(a.num), a.den);
    if (g > 1) a = {a.num / g, a.den / g};
    v = {a, {-c1.num, c1.den}};
  }
  return out;
}

}  // namespace

TEST_CASE("cuspidal lifts at levels 89 and 61") {
  const auto& a = lift89();
  REQUIRE(a.dimension() == 2);
  CHECK(a.minimal_poly == std::vector<int64_t>{5, 2, 1});
  CHECK(a.moduli.size() >= 4);
  const auto& b = lift61();
  REQUIRE(b.dimension() == 2);
  CHECK(b.minimal_poly == std::vector<int64_t>{3, 0, 1});
  CHECK(lift_cuspidal(11, 0).dimension() == 0);
  CHECK(lift_cuspidal(47, 0).dimension() == 0);
}

TEST_CASE("lift reduces to the packets at an unused modulus") {
  const auto& e = lift89();
  const uint32_t r = 191;
  for (auto m : e.moduli) REQUIRE(m != r);
  auto space = std::make_shared<SymbolSpace>(std::make_shared<CosetTable>(89), std::make_shared<WeightModule>(0, PrimeField(r)));
  std::vector<uint32_t> primes{2, 3, 5};
  auto packets = extract_eigenpackets(*space, all_hecke_matrices(*space, primes), primes);
  unsigned cusp = 0;
  for (auto& p : packets) {
    if (!p.cuspidal) continue;
    cusp += p.orbit_size;
    const ExtField& k = *p.field;
    PolyRing<ExtField> ring(k);
    std::vector<ExtField::Elem> m;
    for (auto c : e.minimal_poly) m.push_back(k.from_int(c));
    bool matched = false;
    for (auto& beta : ring.roots(ring.make(m))) {
      bool all = true;
      for (auto& [key, vals] : e.values) {
        auto x = k.zero(), pw = k.one();
        for (auto& c : vals) {
          x = k.add(x, k.mul(pw, k.mul(k.from_int(c.num), k.inv(k.from_int(c.den)))));
          pw = k.mul(pw, beta);
        }
        all = all && k.equal(x, p.values.at(key));
      }
      matched = matched || all;
    }
    CHECK(matched);
  }
  CHECK(cusp == 2);
}

TEST_CASE("quasicuspidality") {
  CHECK(quasicuspidal_test(lift89(), 2, 3));
  CHECK(quasicuspidal_test(lift61(), 2, 5));
  CHECK_FALSE(has_residue_root(lift89(), 2, 3));
  CHECK_FALSE(has_residue_root(lift61(), 2, 5));
  for (uint32_t p : {3u, 5u, 7u, 11u})
    for (uint32_t ell : {2u, 3u, 5u}) {
      if (ell == p) continue;
      for (const auto* e : {&lift89(), &lift61()}) CHECK(quasicuspidal_test(*e, ell, p) == !has_residue_root(*e, ell, p));
      CHECK_FALSE(quasicuspidal_test(eisenstein_lift(89, {2, 3, 5}), ell, p));
    }
  CHECK_THROWS(quasicuspidal_test(lift89(), 3, 3));
}

TEST_CASE("quasicuspidality is invariant under twists by p-1") {
  for (uint32_t p : {3u, 5u, 7u})
    for (uint32_t ell : {2u, 3u, 5u}) {
      if (ell == p) continue;
      for (const auto* e : {&lift89(), &lift61()}) {
        auto t = twist_lift(*e, p - 1);
        CHECK(quasicuspidal_test(t, ell, p) == quasicuspidal_test(*e, ell, p));
        CHECK(residue_hecke_polynomial(t, ell, p) == residue_hecke_polynomial(*e, ell, p));
      }
    }
  auto e = lift89();
  CHECK(twist_lift(twist_lift(e, 2), -2).values == e.values);
}

TEST_CASE("ordinarity") {
  CHECK(ordinary_test(lift89(), 3));
  CHECK(ordinary_test(lift61(), 5));
  auto eis = eisenstein_lift(89, {2, 3, 5});
  for (uint32_t p : {2u, 3u, 5u}) CHECK(ordinary_test(eis, p));
  auto bad = eis;
  bad.values[{3, 1}] = {{3, 1}};
  CHECK_FALSE(ordinary_test(bad, 3));
  auto weighted = lift89();
  weighted.h = 2;
  CHECK_THROWS_AS(ordinary_test(weighted, 3), std::domain_error);
}

TEST_CASE("congruences") {
  const std::vector<uint32_t> primes{2, 3, 5};
  for (const auto* e : {&lift89(), &lift61()}) {
    CHECK(congruent_test(*e, *e, 7, primes));
    CHECK(congruent_test(*e, conjugate(*e), 7, primes));
    CHECK(congruent_test(conjugate(*e), *e, 11, primes));
  }
  CHECK_FALSE(congruent_test(eisenstein_lift(89, primes), lift89(), 3, {2}));
  CHECK(congruent_test(eisenstein_lift(89, primes), eisenstein_lift(89, primes), 3, primes));
}

TEST_CASE("conjugate packets give identical reports") {
  for (uint32_t p : {3u, 5u}) {
    auto e = lift89(), c = conjugate(e);
    CHECK(quasicuspidal_test(e, 2, p) == quasicuspidal_test(c, 2, p));
    CHECK(ordinary_test(e, p) == ordinary_test(c, p));
  }
}

TEST_CASE("certificate logic with supplied dimensions") {
  RigidityOptions opts;
  opts.dims = [](uint32_t q, unsigned h, uint32_t) { return size_t(boundary_dim(q, h).value); };
  auto rep = rigidity_certificate(89, 3, 2, opts);
  CHECK(rep.g == 2);
  CHECK(rep.quasicuspidal);
  CHECK(rep.ordinary);
  CHECK(rep.vanishing.verdict == Verdict::CertifiedZero);
  CHECK(rep.rigid);

  opts.dims = [](uint32_t q, unsigned h, uint32_t r) { return size_t(boundary_dim(q, h).value + (r == 151)); };
  auto bad = rigidity_certificate(89, 3, 2, opts);
  CHECK(bad.vanishing.verdict == Verdict::Uncertified);
  CHECK_FALSE(bad.rigid);

  opts.dims = [](uint32_t q, unsigned h, uint32_t) { return size_t(boundary_dim(q, h).value); };
  auto weak = rigidity_certificate(53, 3, 2, opts);
  CHECK_FALSE(weak.quasicuspidal);
  CHECK_FALSE(weak.rigid);

  CHECK_THROWS_WITH(rigidity_certificate(11, 3, 2, opts), "no cuspidal packet at level 11");
  CHECK(vanishing_weight(3) == 2);
  CHECK(vanishing_weight(5) == 4);
  CHECK(vanishing_weight(2) == 2);
}
