#include "arithcoh/crt.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace arithcoh {
namespace {

__int128 mod_pos(__int128 a, __int128 m) {
  a %= m;
  return a < 0 ? a + m : a;
}

// Inverse of a modulo m (gcd must be 1).
__int128 mod_inverse(__int128 a, __int128 m) {
  __int128 t = 0, nt = 1, r = m, nr = mod_pos(a, m);
  while (nr != 0) {
    __int128 q = r / nr;
    __int128 tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw std::invalid_argument("moduli are not pairwise coprime");
  return mod_pos(t, m);
}

__int128 isqrt(__int128 n) {
  __int128 x = static_cast<__int128>(std::sqrt(static_cast<long double>(n)));
  while (x * x > n) --x;
  while ((x + 1) * (x + 1) <= n) ++x;
  return x;
}

}  // namespace

CrtClass crt_combine(const std::vector<Residue>& residues) {
  CrtClass c{0, 1};
  const __int128 limit = (static_cast<__int128>(1) << 100);
  for (const auto& r : residues) {
    if (r.modulus < 2) throw std::invalid_argument("modulus must be at least 2");
    if (c.modulus > limit / static_cast<__int128>(r.modulus)) throw std::invalid_argument("modulus product overflows");
    const __int128 m = r.modulus;
    const __int128 inv = mod_inverse(c.modulus % m, m);
    const __int128 t = mod_pos((mod_pos(r.value, m) - c.value % m) * inv, m);
    c.value += c.modulus * t;
    c.modulus *= m;
  }
  return c;
}

std::optional<int64_t> crt_reconstruct(const std::vector<Residue>& residues, int64_t bound) {
  if (bound < 0) throw std::invalid_argument("bound must be non-negative");
  CrtClass c = crt_combine(residues);
  if (c.modulus <= 2 * static_cast<__int128>(bound)) throw std::invalid_argument("insufficient moduli for bound");
  __int128 v = c.value;
  if (v > c.modulus / 2) v -= c.modulus;
  if (v > bound || v < -bound) return std::nullopt;
  return static_cast<int64_t>(v);
}

std::optional<std::pair<int64_t, int64_t>> rational_reconstruct(const CrtClass& c) {
  const __int128 bound = isqrt(c.modulus / 2);
  __int128 r0 = c.modulus, r1 = mod_pos(c.value, c.modulus);
  __int128 t0 = 0, t1 = 1;
  while (r1 > bound) {
    __int128 q = r0 / r1;
    __int128 tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (t1 == 0) return std::nullopt;
  __int128 a = r1, b = t1;
  if (b < 0) {
    a = -a;
    b = -b;
  }
  if (b > bound) return std::nullopt;
  __int128 g = a < 0 ? -a : a;
  __int128 h = b;
  while (h) {
    __int128 t = g % h;
    g = h;
    h = t;
  }
  if (g != 1) return std::nullopt;
  if (mod_pos(b * c.value - a, c.modulus) != 0) return std::nullopt;
  return std::make_pair(static_cast<int64_t>(a), static_cast<int64_t>(b));
}

}  // namespace arithcoh
