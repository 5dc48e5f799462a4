#include <algorithm>

#include "arithcoh/eigen.hpp"
#include "arithcoh/eigenpacket.hpp"
#include "arithcoh/hecke.hpp"
#include "doctest.h"

using namespace arithcoh;

namespace {

const std::vector<uint32_t> kPrimes{2, 3, 5};

struct Computed {
  std::shared_ptr<SymbolSpace> space;
  HeckeMatrices mats;
  std::vector<Eigenpacket> packets;
};

Computed compute(uint32_t q, unsigned h, uint32_t r = 149) {
  Computed c;
  c.space = std::make_shared<SymbolSpace>(std::make_shared<CosetTable>(q), std::make_shared<WeightModule>(h, PrimeField(r)));
  c.mats = all_hecke_matrices(*c.space, kPrimes);
  c.packets = extract_eigenpackets(*c.space, c.mats, kPrimes);
  return c;
}

// Brute-force version of the esd criterion: roots in a splitting field L of
// the cubic, with K embedded through a root of its modulus.
bool esd_oracle(const Eigenpacket& e, uint32_t ell) {
  const ExtField& k = *e.field;
  ExtField l = ExtField::with_degree(k.base(), 6 * k.degree());
  PolyRing<ExtField> lring(l);
  auto beta = lring.roots(lift_poly(l, k.modulus())).at(0);
  auto embed = [&](const ExtField::Elem& a) {
    auto out = l.zero(), pw = l.one();
    for (auto c : a) {
      out = l.add(out, l.mul(l.from_base(c), pw));
      pw = l.mul(pw, beta);
    }
    return out;
  };
  auto p = hecke_polynomial(e, ell);
  std::vector<ExtField::Elem> cubic(4);
  for (size_t i = 0; i < 4; ++i) cubic[i] = embed(p.c[3 - i]);
  auto poly = lring.make(cubic);
  std::vector<ExtField::Elem> roots;
  for (auto& a : lring.roots(poly)) {
    auto rest = poly;
    auto lin = lring.make({l.neg(a), l.one()});
    while (rest.degree() > 0 && lring.mod(rest, lin).is_zero()) {
      roots.push_back(a);
      rest = lring.div(rest, lin);
    }
  }
  REQUIRE(roots.size() == 3);
  std::sort(roots.begin(), roots.end());
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = i + 1; j < 3; ++j) {
      auto u = l.mul(roots[i], roots[j]);
      std::vector<ExtField::Elem> img;
      for (auto& a : roots) img.push_back(l.mul(u, l.inv(a)));
      std::sort(img.begin(), img.end());
      if (img == roots) return true;
    }
  return false;
}

Eigenpacket synthetic(const std::vector<int64_t>& roots, uint32_t ell) {
  // Packet whose reversed Hecke polynomial at ell has the given roots.
  PrimeField f(149);
  Eigenpacket e;
  e.r = 149;
  e.field = std::make_shared<const ExtField>(f, PolyRing<PrimeField>(f).make({0, 1}));
  const ExtField& k = *e.field;
  auto r0 = k.from_int(roots[0]), r1 = k.from_int(roots[1]), r2 = k.from_int(roots[2]);
  auto e1 = k.add(k.add(r0, r1), r2);
  auto e2 = k.add(k.add(k.mul(r0, r1), k.mul(r0, r2)), k.mul(r1, r2));
  auto e3 = k.mul(k.mul(r0, r1), r2);
  auto l = k.from_int(ell);
  e.values[{ell, 1}] = e1;
  e.values[{ell, 2}] = k.mul(e2, k.inv(l));
  e.values[{ell, 3}] = k.mul(e3, k.inv(k.pow(l, 3)));
  return e;
}

}  // namespace

TEST_CASE("packets at small level") {
  auto c = compute(11, 0);
  REQUIRE(c.packets.size() == 2);
  for (auto& e : c.packets) {
    CHECK(e.orbit_size == 1);
    CHECK(e.multiplicity == 1);
    CHECK_FALSE(e.cuspidal);
    CHECK(e.block.cols == 1);
  }

  auto d = compute(53, 0);
  size_t total = 0, cusp = 0;
  for (auto& e : d.packets) {
    total += e.multiplicity * e.orbit_size;
    if (e.cuspidal) {
      ++cusp;
      CHECK(e.orbit_size == 2);
      // Dual pair: a(2,2) is the conjugate of a(2,1).
      const ExtField& k = *e.field;
      CHECK(k.equal(e.values.at({2, 2}), k.frobenius(e.values.at({2, 1}))));
      CHECK_FALSE(k.in_base(e.values.at({2, 1})));
    }
  }
  CHECK(total == d.space->h3_dim());
  CHECK(cusp == 1);
}

TEST_CASE("packet values are joint eigenvalues on the block") {
  for (auto [q, h] : {std::pair{53u, 0u}, {23u, 2u}}) {
    auto c = compute(q, h);
    const auto& f = c.space->field();
    for (auto& e : c.packets) {
      REQUIRE(e.block.cols == e.multiplicity * e.orbit_size);
      for (auto& [key, m] : c.mats) {
        // On the F_r-rational block every eigenvalue of T(l,k) is a
        // conjugate of a(l,k).
        auto a = restrict_to(f, m, e.block);
        PolyRing<ExtField> kring(*e.field);
        PolyRing<PrimeField> ring(f);
        auto cp = charpoly(f, a);
        for (auto& fac : ring.factor(cp)) CHECK(e.field->is_zero(kring.eval(lift_poly(*e.field, fac.factor), e.values.at(key))));
      }
    }
  }
}

TEST_CASE("non-commuting input is rejected") {
  auto c = compute(11, 0);
  const auto& f = c.space->field();
  auto bad = c.mats;
  Matrix<PrimeField> m = zeros(f, 2, 2);
  m(0, 1) = 1;
  bad[{2, 1}] = m;
  CHECK_THROWS_AS(extract_eigenpackets(*c.space, bad, kPrimes), std::logic_error);
  CHECK_THROWS(extract_eigenpackets(*c.space, c.mats, {2, 3, 7}));
}

TEST_CASE("degree budget") {
  auto c = compute(89, 0, 151);
  CHECK_THROWS_AS(extract_eigenpackets(*c.space, c.mats, kPrimes, 4), std::runtime_error);
  unsigned maxd = 0;
  for (auto& e : c.packets) maxd = std::max(maxd, e.orbit_size);
  CHECK(maxd == 5);
}

TEST_CASE("esd criterion agrees with the root oracle") {
  CHECK(esd_test(synthetic({1, 2, 4}, 2), 2));
  CHECK(esd_oracle(synthetic({1, 2, 4}, 2), 2));
  CHECK_FALSE(esd_test(synthetic({1, 2, 5}, 2), 2));
  CHECK_FALSE(esd_oracle(synthetic({1, 2, 5}, 2), 2));
  CHECK(esd_test(synthetic({3, 3, 3}, 3), 3));
  CHECK(esd_test(synthetic({3, 12, 6}, 5), 5));
  CHECK_FALSE(esd_test(synthetic({7, 11, 77}, 5), 5));
  CHECK_FALSE(esd_oracle(synthetic({7, 11, 77}, 5), 5));
  for (auto [q, h] : {std::pair{11u, 0u}, {53u, 0u}, {23u, 2u}})
    for (auto& e : compute(q, h).packets)
      for (auto ell : kPrimes) {
        CHECK(esd_test(e, ell) == esd_oracle(e, ell));
        CHECK(esd_test(twist_packet(e, 1), ell) == esd_test(e, ell));
      }
}

TEST_CASE("twisting") {
  auto c = compute(23, 2);
  const auto& f = c.space->field();
  for (auto& e : c.packets) {
    const ExtField& k = *e.field;
    auto t = twist_packet(e, 2);
    CHECK(k.equal(t.values.at({3, 1}), k.mul(k.from_int(9), e.values.at({3, 1}))));
    CHECK(k.equal(t.values.at({3, 2}), k.mul(k.from_int(81), e.values.at({3, 2}))));
    auto back = twist_packet(t, -2);
    CHECK(back.values == e.values);
    auto full = twist_packet(e, static_cast<int64_t>(f.characteristic() - 1));
    CHECK(full.values == e.values);
  }
}

TEST_CASE("boundary pattern classification") {
  // Every packet in weight 2 at level 23 is boundary.
  for (auto& e : compute(23, 2).packets) CHECK_FALSE(e.cuspidal);
  auto c = compute(89, 0, 151);
  unsigned cusp = 0;
  for (auto& e : c.packets)
    if (e.cuspidal) cusp += e.orbit_size * e.multiplicity;
  CHECK(cusp == 2);
}
