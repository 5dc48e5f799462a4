#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "arithcoh/poly.hpp"
#include "arithcoh/prime_field.hpp"

namespace arithcoh {

// F_{p^d} = F_p[t]/(f) for a monic irreducible f of degree d. Elements are
// coefficient vectors of length d in the power basis 1, t, ..., t^{d-1}.
class ExtField {
 public:
  using Elem = std::vector<uint32_t>;

  ExtField(PrimeField base, Poly<PrimeField> modulus);

  // Lexicographically first monic irreducible of degree d.
  static ExtField with_degree(PrimeField base, unsigned d);

  const PrimeField& base() const { return base_; }
  const Poly<PrimeField>& modulus() const { return mod_; }
  uint32_t characteristic() const { return base_.characteristic(); }
  unsigned degree() const { return d_; }

  Elem zero() const { return Elem(d_, 0); }
  Elem one() const {
    Elem e(d_, 0);
    e[0] = 1;
    return e;
  }
  Elem from_int(int64_t v) const {
    Elem e(d_, 0);
    e[0] = base_.from_int(v);
    return e;
  }
  Elem from_base(uint32_t v) const {
    Elem e(d_, 0);
    e[0] = v;
    return e;
  }
  Elem generator() const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;
  Elem pow(Elem a, uint64_t e) const;
  Elem frobenius(const Elem& a) const { return pow(a, characteristic()); }
  Elem pth_root(const Elem& a) const;
  Elem random(std::mt19937_64& rng) const;

  bool is_zero(const Elem& a) const;
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  // True when a lies in the prime subfield.
  bool in_base(const Elem& a) const;

  std::string to_string(const Elem& a) const;

  friend bool operator==(const ExtField& a, const ExtField& b) {
    return a.base_ == b.base_ && a.mod_ == b.mod_;
  }

 private:
  PrimeField base_;
  Poly<PrimeField> mod_;
  unsigned d_;
};

// Image of a polynomial over F_p in K[X].
Poly<ExtField> lift_poly(const ExtField& k, const Poly<PrimeField>& f);

}  // namespace arithcoh
