#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace arithcoh {

bool is_prime(uint64_t n);

// Residues modulo a word-sized prime. Any prime is accepted here; callers that
// need r > 3 (coefficient fields of cohomology) enforce it themselves.
class PrimeField {
 public:
  using Elem = uint32_t;
  static constexpr bool kIsPrimeField = true;

  explicit PrimeField(uint32_t p);

  uint32_t characteristic() const { return p_; }
  uint32_t modulus() const { return p_; }
  unsigned degree() const { return 1; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(int64_t v) const {
    int64_t m = v % static_cast<int64_t>(p_);
    return static_cast<Elem>(m < 0 ? m + p_ : m);
  }
  Elem from_base(uint32_t v) const { return v; }
  // Balanced representative in (-p/2, p/2].
  int64_t to_signed(Elem a) const {
    return a > p_ / 2 ? static_cast<int64_t>(a) - p_ : static_cast<int64_t>(a);
  }

  Elem add(Elem a, Elem b) const {
    uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const {
    return static_cast<Elem>(static_cast<uint64_t>(a) * b % p_);
  }
  Elem inv(Elem a) const;
  Elem pow(Elem a, uint64_t e) const;
  Elem frobenius(Elem a) const { return a; }
  Elem pth_root(Elem a) const { return a; }
  Elem random(std::mt19937_64& rng) const {
    return static_cast<Elem>(rng() % p_);
  }

  bool is_zero(Elem a) const { return a == 0; }
  bool equal(Elem a, Elem b) const { return a == b; }

  std::string to_string(Elem a) const { return std::to_string(a); }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  uint32_t p_;
};

}  // namespace arithcoh
