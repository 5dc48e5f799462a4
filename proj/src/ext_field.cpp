#include "arithcoh/ext_field.hpp"

#include <stdexcept>

namespace arithcoh {

ExtField::ExtField(PrimeField base, Poly<PrimeField> modulus)
    : base_(base), mod_(std::move(modulus)), d_(0) {
  if (mod_.degree() < 1) throw std::invalid_argument("extension modulus must have positive degree");
  if (mod_.leading() != 1) throw std::invalid_argument("extension modulus must be monic");
  PolyRing<PrimeField> ring(base_);
  if (!ring.is_irreducible(mod_)) throw std::invalid_argument("extension modulus is reducible");
  d_ = static_cast<unsigned>(mod_.degree());
}

ExtField ExtField::with_degree(PrimeField base, unsigned d) {
  if (d == 0) throw std::invalid_argument("extension degree must be positive");
  PolyRing<PrimeField> ring(base);
  const uint32_t p = base.characteristic();
  std::vector<uint32_t> digits(d, 0);
  while (true) {
    std::vector<uint32_t> c = digits;
    c.push_back(1);
    auto f = ring.make(c);
    if (ring.is_irreducible(f)) return ExtField(base, f);
    size_t i = 0;
    while (i < d && ++digits[i] == p) digits[i++] = 0;
    if (i == d) throw std::logic_error("no irreducible polynomial found");
  }
}

ExtField::Elem ExtField::generator() const {
  if (d_ == 1) return from_base(base_.neg(mod_.c[0]));
  Elem e(d_, 0);
  e[1] = 1;
  return e;
}

ExtField::Elem ExtField::add(const Elem& a, const Elem& b) const {
  Elem r(d_);
  for (unsigned i = 0; i < d_; ++i) r[i] = base_.add(a[i], b[i]);
  return r;
}

ExtField::Elem ExtField::sub(const Elem& a, const Elem& b) const {
  Elem r(d_);
  for (unsigned i = 0; i < d_; ++i) r[i] = base_.sub(a[i], b[i]);
  return r;
}

ExtField::Elem ExtField::neg(const Elem& a) const {
  Elem r(d_);
  for (unsigned i = 0; i < d_; ++i) r[i] = base_.neg(a[i]);
  return r;
}

ExtField::Elem ExtField::mul(const Elem& a, const Elem& b) const {
  const uint64_t p = characteristic();
  std::vector<uint64_t> t(2 * d_ - 1, 0);
  for (unsigned i = 0; i < d_; ++i) {
    if (!a[i]) continue;
    for (unsigned j = 0; j < d_; ++j) t[i + j] = (t[i + j] + uint64_t(a[i]) * b[j]) % p;
  }
  for (unsigned k = 2 * d_ - 1; k-- > d_;) {
    uint64_t c = t[k];
    if (!c) continue;
    for (unsigned j = 0; j < d_; ++j) t[k - d_ + j] = (t[k - d_ + j] + (p - c) * mod_.c[j]) % p;
  }
  Elem r(d_);
  for (unsigned i = 0; i < d_; ++i) r[i] = static_cast<uint32_t>(t[i]);
  return r;
}

ExtField::Elem ExtField::inv(const Elem& a) const {
  if (is_zero(a)) throw std::domain_error("inverse of zero");
  // Extended Euclid in F_p[t] between a and the modulus.
  PolyRing<PrimeField> ring(base_);
  using P = Poly<PrimeField>;
  P r0 = mod_, r1 = ring.make(a);
  P s0 = ring.zero(), s1 = ring.one();
  while (!r1.is_zero()) {
    auto [q, r] = ring.divmod(r0, r1);
    P s = ring.sub(s0, ring.mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  // r0 is a nonzero constant since the modulus is irreducible.
  P res = ring.scale(s0, base_.inv(r0.c[0]));
  Elem out(d_, 0);
  for (size_t i = 0; i < res.c.size(); ++i) out[i] = res.c[i];
  return out;
}

ExtField::Elem ExtField::pow(Elem a, uint64_t e) const {
  Elem r = one();
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

ExtField::Elem ExtField::pth_root(const Elem& a) const {
  Elem r = a;
  for (unsigned i = 1; i < d_; ++i) r = frobenius(r);
  return r;
}

ExtField::Elem ExtField::random(std::mt19937_64& rng) const {
  Elem r(d_);
  for (auto& v : r) v = base_.random(rng);
  return r;
}

bool ExtField::is_zero(const Elem& a) const {
  for (auto v : a)
    if (v) return false;
  return true;
}

bool ExtField::in_base(const Elem& a) const {
  for (unsigned i = 1; i < d_; ++i)
    if (a[i]) return false;
  return true;
}

std::string ExtField::to_string(const Elem& a) const {
  if (in_base(a)) return std::to_string(a[0]);
  std::string s;
  for (unsigned i = d_; i-- > 0;) {
    if (!a[i]) continue;
    if (!s.empty()) s += "+";
    if (i == 0 || a[i] != 1) s += std::to_string(a[i]);
    if (i > 0) s += (i == 1 ? "t" : "t^" + std::to_string(i));
  }
  return s;
}

Poly<ExtField> lift_poly(const ExtField& k, const Poly<PrimeField>& f) {
  Poly<ExtField> out;
  for (auto c : f.c) out.c.push_back(k.from_base(c));
  return out;
}

}  // namespace arithcoh
