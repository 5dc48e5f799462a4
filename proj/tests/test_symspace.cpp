#include <random>

#include "arithcoh/symbol_space.hpp"
#include "doctest.h"

using namespace arithcoh;

namespace {

size_t dim_of(uint32_t q, unsigned h, uint32_t r, SymbolSpaceOptions o = {}, uint64_t seed = 0) {
  auto table = std::make_shared<CosetTable>(q, seed);
  auto module = std::make_shared<WeightModule>(h, PrimeField(r));
  return SymbolSpace(table, module, o).h3_dim();
}

Mat3 random_unimodular(std::mt19937_64& rng) {
  Mat3 g = mat3_identity();
  for (int t = 0; t < 12; ++t) {
    int i = static_cast<int>(rng() % 3), j = static_cast<int>(rng() % 3);
    if (i == j) continue;
    int64_t c = static_cast<int64_t>(rng() % 5) - 2;
    for (int k = 0; k < 3; ++k) g[i][k] += c * g[j][k];
  }
  return g;
}

}  // namespace

TEST_CASE("point enumeration") {
  CHECK(CosetTable(2).size() == 7);
  CHECK(CosetTable(11).size() == 133);
  CHECK(CosetTable(53).size() == 2863);
  CHECK_THROWS(CosetTable(12));
  CosetTable t(7, 99);
  for (size_t i = 0; i < t.size(); ++i) {
    const auto& p = t.point(i).v;
    CHECK(t.index(p[0], p[1], p[2]) == i);
    CHECK(t.index(3 * p[0], 3 * p[1], 3 * p[2]) == i);
  }
  CHECK_THROWS(t.index(7, 14, 0));
}

TEST_CASE("coset_of is left Gamma_0 invariant") {
  std::mt19937_64 rng(8);
  for (uint32_t q : {5u, 11u}) {
    CosetTable t(q);
    CHECK(t.coset_of(mat3_identity()) == t.index(1, 0, 0));
    int found = 0;
    while (found < 100) {
      Mat3 gamma = random_unimodular(rng);
      if (gamma[0][1] % q || gamma[0][2] % q) continue;
      ++found;
      CHECK(t.coset_of(gamma) == t.index(1, 0, 0));
      Mat3 g = random_unimodular(rng);
      CHECK(t.coset_of(mat3_mul(gamma, g)) == t.coset_of(g));
    }
    for (const auto& s : symmetry_group()) {
      auto perm = t.permutation(s.m);
      std::vector<bool> hit(t.size(), false);
      for (auto p : perm) hit[p] = true;
      CHECK(std::count(hit.begin(), hit.end(), true) == static_cast<long>(t.size()));
    }
  }
}

TEST_CASE("symmetry group") {
  const auto& H = symmetry_group();
  CHECK(H.size() == 24);
  CHECK(H[0].m == mat3_identity());
  for (const auto& a : H)
    for (const auto& b : H) {
      Mat3 c = mat3_mul(a.m, b.m);
      bool found = false;
      for (const auto& s : H)
        if (s.m == c) {
          found = true;
          CHECK(s.chi == a.chi * b.chi);
        }
      CHECK(found);
    }
  Mat3 t = three_term_rotation();
  CHECK(mat3_det(t) == 1);
  CHECK(mat3_mul(t, mat3_mul(t, t)) == mat3_identity());
}

TEST_CASE("reduced and raw presentations agree") {
  SymbolSpaceOptions raw;
  raw.mode = RelationMode::Raw;
  for (auto [q, h] : {std::pair{2u, 0u}, {3u, 1u}, {5u, 2u}, {7u, 0u}, {11u, 0u}, {5u, 1u}, {3u, 2u}}) {
    size_t reduced = dim_of(q, h, 149);
    CHECK(dim_of(q, h, 149, raw) == reduced);
    SymbolSpaceOptions alt;
    alt.generator_set = 1;
    CHECK(dim_of(q, h, 149, alt) == reduced);
    raw.generator_set = 1;
    CHECK(dim_of(q, h, 149, raw) == reduced);
    raw.generator_set = 0;
    CHECK(dim_of(q, h, 151, {}, 12345) == reduced);
  }
}

TEST_CASE("small weight-2 dimensions equal the boundary count") {
  // 2 s_4(q) + 3 with s_4 = 0, 0, 1, 1 at q = 2, 3, 5, 7.
  CHECK(dim_of(2, 2, 149) == 3);
  CHECK(dim_of(3, 2, 149) == 3);
  CHECK(dim_of(5, 2, 149) == 5);
  CHECK(dim_of(7, 2, 149) == 5);
}

TEST_CASE("odd weight vanishes at small levels") {
  for (uint32_t q : {2u, 3u, 5u, 7u, 11u, 13u}) CHECK(dim_of(q, 1, 149) == 0);
}

TEST_CASE("modulus guards") {
  CHECK_THROWS(dim_of(11, 0, 11));
  CHECK_THROWS(dim_of(5, 0, 3));
}
