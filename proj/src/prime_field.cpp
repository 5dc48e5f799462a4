#include "arithcoh/prime_field.hpp"

namespace arithcoh {

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(uint32_t p) : p_(p) {
  if (p >= (1u << 31)) throw std::invalid_argument("modulus must be below 2^31");
  if (!is_prime(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
}

PrimeField::Elem PrimeField::inv(Elem a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  int64_t t = 0, new_t = 1, r = p_, new_r = a;
  while (new_r != 0) {
    int64_t q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  return from_int(t);
}

PrimeField::Elem PrimeField::pow(Elem a, uint64_t e) const {
  Elem result = 1;
  while (e) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

}  // namespace arithcoh
