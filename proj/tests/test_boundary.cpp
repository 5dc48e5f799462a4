#include <random>

#include "arithcoh/boundary.hpp"
#include "arithcoh/symbol_space.hpp"
#include "doctest.h"

using namespace arithcoh;

namespace {

// Riemann-Roch with elliptic points counted by brute force.
int64_t oracle_cusp_dim(int64_t w, int64_t q) {
  int64_t n2 = 0, n3 = 0;
  for (int64_t x = 0; x < q; ++x) {
    if ((x * x + 1) % q == 0) ++n2;
    if ((x * x + x + 1) % q == 0) ++n3;
  }
  // 12 g = 12 + (q+1) - 3 n2 - 4 n3 - 12 (two cusps).
  const int64_t g = (q + 1 - 3 * n2 - 4 * n3) / 12;
  if (w == 2) return g;
  return (w - 1) * (g - 1) + (w / 2 - 1) * 2 + n2 * (w / 4) + n3 * (w / 3);
}

}  // namespace

TEST_CASE("genus of X_0(q) against the table") {
  const std::vector<std::pair<uint32_t, unsigned>> table{{2, 0},  {3, 0},  {5, 0},  {7, 0},  {11, 1}, {13, 0}, {17, 1},
                                                         {19, 1}, {23, 2}, {29, 2}, {31, 2}, {37, 2}, {41, 3}, {43, 3},
                                                         {47, 4}, {53, 4}, {59, 5}, {61, 4}, {67, 5}, {71, 6}, {73, 5},
                                                         {79, 6}, {83, 7}, {89, 7}, {97, 7}, {101, 8}};
  for (auto [q, g] : table) {
    CHECK(genus_x0(q) == g);
    CHECK(cuspform_dim(2, q) == g);
  }
}

TEST_CASE("cusp form dimensions") {
  CHECK(cuspform_dim(4, 2) == 0);
  CHECK(cuspform_dim(8, 2) == 1);
  CHECK(cuspform_dim(4, 3) == 0);
  CHECK(cuspform_dim(6, 3) == 1);
  CHECK(cuspform_dim(4, 13) == 3);
  CHECK(cuspform_dim(4, 23) == 5);
  CHECK(cuspform_dim(4, 89) == 22);
  CHECK(cuspform_dim(6, 61) == 25);
  for (uint32_t q = 2; q < 200; ++q) {
    if (!is_prime(q)) continue;
    for (unsigned w = 2; w <= 12; w += 2) CHECK(cuspform_dim(w, q) == oracle_cusp_dim(w, q));
  }
  CHECK_THROWS(cuspform_dim(3, 11));
  CHECK_THROWS(cuspform_dim(0, 11));
  CHECK_THROWS(cuspform_dim(2, 15));
}

TEST_CASE("boundary dimension parity") {
  CHECK(boundary_dim(11, 0).value == 5);
  CHECK(boundary_dim(61, 4).value == 53);
  for (uint32_t q = 2; q < 100; ++q) {
    if (!is_prime(q)) continue;
    for (unsigned h = 0; h <= 6; ++h) {
      auto b = boundary_dim(q, h);
      if (h % 2)
        CHECK(b.value == 0);
      else
        CHECK(b.value == 2 * cuspform_dim(h + 2, q) + 3);
    }
  }
  CHECK_THROWS(boundary_dim(91, 2));
}

TEST_CASE("boundary matches computed even-weight dimensions") {
  for (uint32_t q : {2u, 3u, 5u, 7u, 13u}) CHECK(h3_dim(q, 2, 149) == boundary_dim(q, 2).value);
}

TEST_CASE("certificate verdicts") {
  auto zero = certify_cuspidal(13, 2, {{149, 9}, {151, 9}});
  CHECK(zero.verdict == Verdict::CertifiedZero);
  CHECK(zero.boundary == 9);

  auto two = certify_cuspidal(89, 0, {{149, 19}, {151, 19}}, 2u);
  CHECK(two.verdict == Verdict::CertifiedDim);
  CHECK(two.value == 2);
  CHECK(certify_cuspidal(89, 0, {{149, 19}, {151, 19}}).verdict == Verdict::Uncertified);
  CHECK(certify_cuspidal(89, 0, {{149, 19}, {151, 19}}, 1u).verdict == Verdict::Uncertified);
  CHECK(certify_cuspidal(13, 2, {{149, 9}, {151, 11}}).verdict == Verdict::Uncertified);
  CHECK(certify_cuspidal(13, 2, {{149, 7}}).verdict == Verdict::Uncertified);
  CHECK(certify_cuspidal(13, 1, {{149, 0}, {151, 0}}).verdict == Verdict::CertifiedZero);
  CHECK(certify_cuspidal(13, 1, {{149, 2}}).verdict == Verdict::Uncertified);
  CHECK_THROWS(certify_cuspidal(13, 2, {}));
}

TEST_CASE("certified-zero is one-sided") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 500; ++t) {
    const uint32_t q = std::vector<uint32_t>{2, 11, 23, 53, 89}[rng() % 5];
    const unsigned h = rng() % 5;
    const auto b = boundary_dim(q, h).value;
    const size_t d = b + 1 + rng() % 4;
    std::optional<unsigned> packets;
    if (rng() % 2) packets = static_cast<unsigned>(rng() % 6);
    auto c = certify_cuspidal(q, h, {{149, d}, {151, d}}, packets);
    CHECK(c.verdict != Verdict::CertifiedZero);
    if (c.verdict == Verdict::CertifiedDim) CHECK(c.value == d - b);
  }
}
