#include "arithcoh/coset_table.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "arithcoh/prime_field.hpp"

namespace arithcoh {

CosetTable::CosetTable(uint32_t q, uint64_t shuffle_seed) : q_(q) {
  if (!is_prime(q)) throw std::invalid_argument("level " + std::to_string(q) + " is not prime");
  if (q > 5000) throw std::invalid_argument("level too large");
  for (uint32_t x = 0; x < q; ++x)
    for (uint32_t y = 0; y < q; ++y) points_.push_back({{1, x, y}});
  for (uint32_t y = 0; y < q; ++y) points_.push_back({{0, 1, y}});
  points_.push_back({{0, 0, 1}});
  order_.resize(points_.size());
  std::iota(order_.begin(), order_.end(), 0u);
  if (shuffle_seed) {
    std::mt19937_64 rng(shuffle_seed);
    for (size_t i = order_.size(); i > 1; --i) std::swap(order_[i - 1], order_[rng() % i]);
  }
  rank_.resize(order_.size());
  for (uint32_t i = 0; i < order_.size(); ++i) rank_[order_[i]] = i;
  inverse_.assign(q, 0);
  PrimeField f(q);
  for (uint32_t a = 1; a < q; ++a) inverse_[a] = f.inv(a);
}

size_t CosetTable::index(int64_t a, int64_t b, int64_t c) const {
  const int64_t q = q_;
  uint64_t v[3] = {static_cast<uint64_t>(((a % q) + q) % q), static_cast<uint64_t>(((b % q) + q) % q),
                   static_cast<uint64_t>(((c % q) + q) % q)};
  size_t canon;
  if (v[0]) {
    uint64_t s = inverse_[v[0]];
    canon = (v[1] * s % q_) * q_ + v[2] * s % q_;
  } else if (v[1]) {
    canon = size_t(q_) * q_ + v[2] * inverse_[v[1]] % q_;
  } else if (v[2]) {
    canon = size_t(q_) * q_ + q_;
  } else {
    throw std::domain_error("zero vector has no projective point");
  }
  return rank_[canon];
}

size_t CosetTable::act(size_t i, const Mat3& g) const {
  const auto& p = point(i).v;
  int64_t w[3];
  for (int j = 0; j < 3; ++j) w[j] = int64_t(p[0]) * g[0][j] + int64_t(p[1]) * g[1][j] + int64_t(p[2]) * g[2][j];
  return index(w[0], w[1], w[2]);
}

size_t CosetTable::coset_of(const Mat3& g) const { return index(g[0][0], g[0][1], g[0][2]); }

std::vector<uint32_t> CosetTable::permutation(const Mat3& g) const {
  std::vector<uint32_t> out(size());
  for (size_t i = 0; i < size(); ++i) out[i] = static_cast<uint32_t>(act(i, g));
  return out;
}

}  // namespace arithcoh
