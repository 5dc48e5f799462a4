#include "arithcoh/eigenpacket.hpp"

#include <random>
#include <stdexcept>

#include "arithcoh/eigen.hpp"
#include "arithcoh/hecke.hpp"

namespace arithcoh {

namespace {

using KMat = Matrix<ExtField>;

bool nilpotent_shift(const ExtField& k, const KMat& a, const ExtField::Elem& t) {
  KMat s = a;
  for (size_t i = 0; i < s.rows; ++i) s(i, i) = k.sub(s(i, i), t);
  KMat p = identity(k, s.rows);
  for (size_t i = 0; i < s.rows; ++i) p = multiply(k, p, s);
  return is_zero_matrix(k, p);
}

ExtField::Elem trace_over_dim(const ExtField& k, const KMat& a) {
  auto t = k.zero();
  for (size_t i = 0; i < a.rows; ++i) t = k.add(t, a(i, i));
  return k.mul(t, k.inv(k.from_int(static_cast<int64_t>(a.rows))));
}

Matrix<PrimeField> combine(const PrimeField& f, const std::vector<const Matrix<PrimeField>*>& ops,
                           const std::vector<uint32_t>& c) {
  Matrix<PrimeField> out = zeros(f, ops[0]->rows, ops[0]->cols);
  for (size_t i = 0; i < ops.size(); ++i)
    if (c[i] != 0) out = add(f, out, scale(f, *ops[i], c[i]));
  return out;
}

struct Candidate {
  std::vector<Eigenpacket> packets;
  bool ok = false;
};

// Splits one primary block with the separating operator theta; fails if any
// operator has more than one eigenvalue on a resulting piece.
Candidate split_block(const SymbolSpace& space, const Matrix<PrimeField>& u,
                      const std::vector<Matrix<PrimeField>>& restricted, const std::vector<HeckeKey>& keys,
                      const Matrix<PrimeField>& theta, unsigned max_degree) {
  const PrimeField& f = space.field();
  PolyRing<PrimeField> ring(f);
  Candidate out;
  for (auto& fac : ring.factor(charpoly(f, theta))) {
    const unsigned d = static_cast<unsigned>(fac.factor.degree());
    if (d > max_degree)
      throw std::runtime_error("eigenvalue field of degree " + std::to_string(d) + " exceeds the budget of " +
                               std::to_string(max_degree));
    auto k = std::make_shared<const ExtField>(f, fac.factor);
    auto lam = k->generator();
    KMat shifted = lift_matrix(*k, theta);
    for (size_t i = 0; i < shifted.rows; ++i) shifted(i, i) = k->sub(shifted(i, i), lam);
    KMat power = identity(*k, shifted.rows);
    for (unsigned i = 0; i < fac.multiplicity; ++i) power = multiply(*k, power, shifted);
    KMat v = kernel(*k, power);
    Eigenpacket e;
    e.q = space.q();
    e.h = space.h();
    e.r = space.r();
    e.field = k;
    e.minimal_poly = fac.factor;
    e.multiplicity = static_cast<unsigned>(v.cols);
    e.orbit_size = d;
    for (size_t i = 0; i < keys.size(); ++i) {
      KMat a = restrict_to(*k, lift_matrix(*k, restricted[i]), v);
      auto t = trace_over_dim(*k, a);
      if (!nilpotent_shift(*k, a, t)) return out;
      e.values[keys[i]] = t;
    }
    e.block = multiply(f, u, generalized_kernel(f, theta, fac.factor, fac.multiplicity));
    out.packets.push_back(std::move(e));
  }
  out.ok = true;
  return out;
}

}  // namespace

uint32_t central_value(const PrimeField& f, uint32_t ell, unsigned h) {
  return f.pow(f.from_int(ell), 3ull * h);
}

HeckeMatrices all_hecke_matrices(const SymbolSpace& space, const std::vector<uint32_t>& primes) {
  HeckeMatrices out;
  for (auto ell : primes)
    for (unsigned k = 1; k <= 3; ++k) out.emplace(HeckeKey{ell, k}, hecke_matrix(space, ell, k));
  return out;
}

std::vector<Eigenpacket> extract_eigenpackets(const SymbolSpace& space, const HeckeMatrices& mats,
                                              const std::vector<uint32_t>& primes, unsigned max_degree) {
  const PrimeField& f = space.field();
  const size_t n = space.h3_dim();
  for (auto& [key, m] : mats)
    if (m.rows != n || m.cols != n) throw std::invalid_argument("Hecke matrix has the wrong size");
  for (auto i = mats.begin(); i != mats.end(); ++i)
    for (auto j = std::next(i); j != mats.end(); ++j)
      if (!(multiply(f, i->second, j->second) == multiply(f, j->second, i->second)))
        throw std::logic_error("Hecke operators do not commute");
  std::vector<Eigenpacket> out;
  if (n == 0) return out;

  // Primary decomposition under T(l,1), one prime at a time.
  std::vector<Matrix<PrimeField>> blocks{identity(f, n)};
  PolyRing<PrimeField> ring(f);
  for (auto ell : primes) {
    auto it = mats.find({ell, 1});
    if (it == mats.end()) throw std::invalid_argument("missing T(" + std::to_string(ell) + ",1)");
    std::vector<Matrix<PrimeField>> next;
    for (auto& u : blocks) {
      auto a = restrict_to(f, it->second, u);
      for (auto& fac : ring.factor(charpoly(f, a)))
        next.push_back(multiply(f, u, generalized_kernel(f, a, fac.factor, fac.multiplicity)));
    }
    blocks = std::move(next);
  }

  std::vector<HeckeKey> keys;
  std::vector<const Matrix<PrimeField>*> full;
  for (auto& [key, m] : mats) {
    keys.push_back(key);
    full.push_back(&m);
  }
  for (auto& u : blocks) {
    std::vector<Matrix<PrimeField>> restricted;
    for (auto* m : full) restricted.push_back(restrict_to(f, *m, u));
    std::vector<const Matrix<PrimeField>*> sep;
    for (size_t i = 0; i < keys.size(); ++i)
      if (keys[i].second != 3) sep.push_back(&restricted[i]);
    std::mt19937_64 rng(0x5eedull);
    bool done = false;
    const size_t trials = sep.size() + 64;
    for (size_t t = 0; t < trials && !done; ++t) {
      std::vector<uint32_t> c(sep.size(), 0);
      if (t < sep.size())
        c[t] = 1;
      else
        for (auto& x : c) x = f.random(rng);
      auto cand = split_block(space, u, restricted, keys, combine(f, sep, c), max_degree);
      if (!cand.ok) continue;
      for (auto& e : cand.packets) out.push_back(std::move(e));
      done = true;
    }
    if (!done) throw std::runtime_error("no separating Hecke combination found");
  }
  for (auto& e : out) e.cuspidal = !has_boundary_pattern(e, primes);
  return out;
}

Poly<ExtField> hecke_polynomial(const Eigenpacket& e, uint32_t ell) {
  const ExtField& k = *e.field;
  auto get = [&](unsigned j) {
    auto it = e.values.find({ell, j});
    if (it == e.values.end())
      throw std::invalid_argument("packet has no value for T(" + std::to_string(ell) + "," + std::to_string(j) + ")");
    return it->second;
  };
  auto l = k.from_int(ell);
  auto l3 = k.pow(l, 3);
  PolyRing<ExtField> ring(k);
  return ring.make({k.one(), k.neg(get(1)), k.mul(l, get(2)), k.neg(k.mul(l3, get(3)))});
}

bool has_boundary_pattern(const Eigenpacket& e, const std::vector<uint32_t>& primes) {
  const ExtField& k = *e.field;
  PolyRing<ExtField> ring(k);
  for (auto ell : primes) {
    auto p = hecke_polynomial(e, ell);
    auto inv = k.inv(k.from_int(ell));
    auto x = k.one();
    bool hit = false;
    for (unsigned j = 0; j <= 3 * e.h + 2 && !hit; ++j) {
      hit = k.is_zero(ring.eval(p, x));
      x = k.mul(x, inv);
    }
    if (!hit) return false;
  }
  return true;
}

Eigenpacket twist_packet(const Eigenpacket& e, int64_t n) {
  Eigenpacket out = e;
  const PrimeField& f = e.field->base();
  const uint64_t order = f.characteristic() - 1;
  const uint64_t m = static_cast<uint64_t>(((n % static_cast<int64_t>(order)) + static_cast<int64_t>(order)) %
                                           static_cast<int64_t>(order));
  for (auto& [key, v] : out.values) {
    auto s = f.pow(f.from_int(key.first), (m * key.second) % order);
    v = e.field->mul(e.field->from_base(s), v);
  }
  return out;
}

bool esd_test(const Eigenpacket& e, uint32_t ell) {
  // Roots of Y^3 - e1 Y^2 + e2 Y - e3, the reversed Hecke polynomial. The root
  // multiset is stable under y -> u/y exactly when u e2 = e1 e3,
  // u^2 e1 = e2 e3 and u^3 = e3^2.
  const ExtField& k = *e.field;
  auto p = hecke_polynomial(e, ell);
  auto e1 = k.neg(p.c.size() > 1 ? p.c[1] : k.zero());
  auto e2 = p.c.size() > 2 ? p.c[2] : k.zero();
  auto e3 = k.neg(p.c.size() > 3 ? p.c[3] : k.zero());
  if (k.is_zero(e3)) return false;
  if (k.is_zero(e2)) return k.is_zero(e1);  // u = y0^2 for any root y0
  auto u = k.mul(k.mul(e1, e3), k.inv(e2));
  return k.equal(k.mul(k.mul(u, u), e1), k.mul(e2, e3)) && k.equal(k.pow(u, 3), k.mul(e3, e3));
}

}  // namespace arithcoh
