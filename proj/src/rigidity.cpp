#include "arithcoh/rigidity.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "arithcoh/crt.hpp"
#include "arithcoh/eigen.hpp"
#include "arithcoh/hecke.hpp"

namespace arithcoh {

namespace {

using Mat = Matrix<PrimeField>;

// Cuspidal Hecke data at one modulus.
struct ModularBlock {
  uint32_t r;
  PrimeField f;
  size_t dim = 0;
  std::map<HeckeKey, Mat> ops;
};

ModularBlock cuspidal_block(uint32_t q, unsigned h, uint32_t r, const LiftOptions& opts) {
  if (opts.progress) opts.progress("cuspidal block q=" + std::to_string(q) + " h=" + std::to_string(h) + " r=" + std::to_string(r));
  auto space = std::make_shared<SymbolSpace>(std::make_shared<CosetTable>(q), std::make_shared<WeightModule>(h, PrimeField(r)));
  auto mats = all_hecke_matrices(*space, opts.primes);
  auto packets = extract_eigenpackets(*space, mats, opts.primes, opts.max_degree);
  ModularBlock b{r, space->field(), 0, {}};
  const auto& f = space->field();
  Mat basis = zeros(f, space->h3_dim(), 0);
  for (auto& e : packets) {
    if (!e.cuspidal) continue;
    Mat next = zeros(f, basis.rows, basis.cols + e.block.cols);
    for (size_t i = 0; i < basis.rows; ++i) {
      for (size_t j = 0; j < basis.cols; ++j) next(i, j) = basis(i, j);
      for (size_t j = 0; j < e.block.cols; ++j) next(i, basis.cols + j) = e.block(i, j);
    }
    basis = std::move(next);
  }
  b.dim = basis.cols;
  if (b.dim)
    for (auto& [key, m] : mats) b.ops.emplace(key, restrict_to(f, m, basis));
  return b;
}

Mat combination(const ModularBlock& b, const std::map<HeckeKey, int64_t>& theta) {
  Mat out = zeros(b.f, b.dim, b.dim);
  for (auto& [key, c] : theta) out = add(b.f, out, scale(b.f, b.ops.at(key), b.f.from_int(c)));
  return out;
}

// Coefficients c with m = sum_i c_i t^i, i < dim; nullopt when t is not
// cyclic or m is not a polynomial in t.
std::optional<std::vector<uint32_t>> express(const PrimeField& f, const Mat& t, const Mat& m) {
  const size_t d = t.rows;
  Mat sys = zeros(f, d * d, d + 1);
  Mat pw = identity(f, d);
  for (size_t i = 0; i < d; ++i) {
    for (size_t e = 0; e < d * d; ++e) sys(e, i) = pw.a[e];
    pw = multiply(f, pw, t);
  }
  for (size_t e = 0; e < d * d; ++e) sys(e, d) = m.a[e];
  auto piv = rref_inplace(f, sys);
  if (piv.size() != d || piv.back() != d - 1) return std::nullopt;
  std::vector<uint32_t> c(d);
  for (size_t i = 0; i < d; ++i) c[i] = sys(i, d);
  return c;
}

struct ModularLift {
  std::vector<uint32_t> charpoly;
  std::map<HeckeKey, std::vector<uint32_t>> coeffs;
};

std::optional<ModularLift> modular_lift(const ModularBlock& b, const std::map<HeckeKey, int64_t>& theta) {
  Mat t = combination(b, theta);
  ModularLift out;
  out.charpoly = charpoly(b.f, t).c;
  for (auto& [key, m] : b.ops) {
    auto c = express(b.f, t, m);
    if (!c) return std::nullopt;
    out.coeffs.emplace(key, std::move(*c));
  }
  return out;
}

std::optional<PacketLift> combine_lifts(uint32_t q, unsigned h, const std::map<HeckeKey, int64_t>& theta,
                                        const std::vector<const ModularBlock*>& blocks,
                                        const std::vector<ModularLift>& lifts) {
  PacketLift out;
  out.q = q;
  out.h = h;
  out.theta = theta;
  for (auto* b : blocks) out.moduli.push_back(b->r);
  auto residues = [&](auto pick) {
    std::vector<Residue> res;
    for (size_t i = 0; i < lifts.size(); ++i) res.push_back({static_cast<int64_t>(pick(lifts[i])), blocks[i]->r});
    return crt_combine(res);
  };
  const size_t n = lifts[0].charpoly.size();
  for (size_t i = 0; i < n; ++i) {
    auto c = residues([i](const ModularLift& l) { return l.charpoly[i]; });
    __int128 v = c.value > c.modulus / 2 ? c.value - c.modulus : c.value;
    out.minimal_poly.push_back(static_cast<int64_t>(v));
  }
  for (auto& [key, first] : lifts[0].coeffs) {
    std::vector<Rational> vals;
    for (size_t i = 0; i < first.size(); ++i) {
      auto rr = rational_reconstruct(residues([&, i](const ModularLift& l) { return l.coeffs.at(key)[i]; }));
      if (!rr) return std::nullopt;
      vals.push_back({rr->first, rr->second});
    }
    out.values.emplace(key, std::move(vals));
  }
  return out;
}

std::vector<std::map<HeckeKey, int64_t>> theta_candidates(const std::vector<uint32_t>& primes) {
  std::vector<std::map<HeckeKey, int64_t>> out;
  for (unsigned k = 1; k <= 2; ++k)
    for (auto ell : primes) out.push_back({{{ell, k}, 1}});
  for (size_t i = 0; i < primes.size(); ++i)
    for (size_t j = i + 1; j < primes.size(); ++j)
      for (int64_t c = 1; c <= 3; ++c) out.push_back({{{primes[i], 1}, 1}, {{primes[j], 1}, c}});
  return out;
}

int64_t reduce(const Rational& x, uint32_t p) {
  PrimeField f(p);
  auto den = f.from_int(x.den);
  if (f.is_zero(den)) throw std::domain_error("lift is not integral at " + std::to_string(p));
  return f.to_signed(f.mul(f.from_int(x.num), f.inv(den)));
}

// Residue fields of Z[theta] at p, one per irreducible factor of M mod p.
std::vector<ExtField> residue_fields(const PacketLift& e, uint32_t p) {
  if (e.minimal_poly.empty()) throw std::invalid_argument("packet has no lift");
  PrimeField f(p);
  PolyRing<PrimeField> ring(f);
  std::vector<uint32_t> m;
  for (auto c : e.minimal_poly) m.push_back(f.from_int(c));
  std::vector<ExtField> out;
  for (auto& fac : ring.factor(ring.make(m))) out.emplace_back(f, fac.factor);
  return out;
}

ExtField::Elem value_at(const PacketLift& e, const ExtField& k, const ExtField::Elem& theta, HeckeKey key) {
  auto it = e.values.find(key);
  if (it == e.values.end())
    throw std::invalid_argument("lift has no value for T(" + std::to_string(key.first) + "," + std::to_string(key.second) + ")");
  auto out = k.zero(), pw = k.one();
  for (auto& c : it->second) {
    out = k.add(out, k.mul(k.from_int(reduce(c, k.characteristic())), pw));
    pw = k.mul(pw, theta);
  }
  return out;
}

Poly<ExtField> residue_polynomial(const PacketLift& e, const ExtField& k, uint32_t ell) {
  auto t = k.generator();
  auto l = k.from_int(ell);
  PolyRing<ExtField> ring(k);
  return ring.make({k.one(), k.neg(value_at(e, k, t, {ell, 1})), k.mul(l, value_at(e, k, t, {ell, 2})),
                    k.neg(k.mul(k.pow(l, 3), value_at(e, k, t, {ell, 3})))});
}

__int128 gcd128(__int128 a, __int128 b) {
  while (b) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

uint32_t next_prime(uint32_t n) {
  do ++n;
  while (!is_prime(n));
  return n;
}

}  // namespace

PacketLift eisenstein_lift(uint32_t q, const std::vector<uint32_t>& primes) {
  PacketLift e;
  e.q = q;
  e.theta = {{{primes.at(0), 1}, 1}};
  const int64_t l0 = primes[0];
  e.minimal_poly = {-(1 + l0 + l0 * l0), 1};
  for (auto ell : primes) {
    const int64_t l = ell;
    e.values[{ell, 1}] = {{1 + l + l * l, 1}};
    e.values[{ell, 2}] = {{1 + l + l * l, 1}};
    e.values[{ell, 3}] = {{1, 1}};
  }
  return e;
}

PacketLift twist_lift(const PacketLift& e, int64_t n) {
  PacketLift out = e;
  for (auto& [key, vals] : out.values) {
    __int128 s = 1;
    for (int64_t i = 0; i < std::abs(n) * static_cast<int64_t>(key.second); ++i) {
      s *= key.first;
      if (s > (static_cast<__int128>(1) << 62)) throw std::overflow_error("twist exponent too large");
    }
    for (auto& v : vals) {
      __int128 num = v.num, den = v.den;
      if (n >= 0)
        num *= s;
      else
        den *= s;
      __int128 g = gcd128(num < 0 ? -num : num, den);
      if (g > 1) {
        num /= g;
        den /= g;
      }
      if (num > INT64_MAX || num < INT64_MIN || den > INT64_MAX) throw std::overflow_error("twisted value overflows");
      v = {static_cast<int64_t>(num), static_cast<int64_t>(den)};
    }
  }
  return out;
}

PacketLift lift_cuspidal(uint32_t q, unsigned h, const LiftOptions& opts) {
  auto usable = [&](uint32_t r) {
    return is_prime(r) && r != q && r > h + 3 &&
           std::find(opts.primes.begin(), opts.primes.end(), r) == opts.primes.end();
  };
  std::vector<uint32_t> moduli;
  for (auto r : opts.moduli)
    if (usable(r)) moduli.push_back(r);
  if (moduli.empty()) throw std::invalid_argument("no usable modulus");
  std::deque<ModularBlock> blocks;  // stable addresses
  auto block = [&](size_t i) -> const ModularBlock& {
    while (blocks.size() <= i) {
      blocks.push_back(cuspidal_block(q, h, moduli[blocks.size()], opts));
      if (blocks.back().dim != blocks.front().dim)
        throw std::runtime_error("cuspidal dimension differs between moduli " + std::to_string(blocks.front().r) +
                                 " and " + std::to_string(blocks.back().r));
    }
    return blocks[i];
  };
  if (block(0).dim == 0) {
    PacketLift empty;
    empty.q = q;
    empty.h = h;
    empty.moduli = {moduli[0]};
    return empty;
  }
  const size_t base = moduli.size();
  uint32_t extra = *std::max_element(moduli.begin(), moduli.end());
  for (size_t i = 0; i < opts.max_extra_moduli; ++i) {
    do extra = next_prime(extra);
    while (!usable(extra));
    moduli.push_back(extra);
  }

  for (const auto& theta : theta_candidates(opts.primes)) {
    std::vector<ModularLift> lifts;
    std::vector<const ModularBlock*> used;
    std::optional<PacketLift> previous;
    bool cyclic = true;
    for (size_t i = 0; i < moduli.size() && cyclic; ++i) {
      const auto& b = block(i);
      auto l = modular_lift(b, theta);
      if (!l) {
        cyclic = false;
        break;
      }
      lifts.push_back(std::move(*l));
      used.push_back(&b);
      if (lifts.size() < base) continue;
      auto current = combine_lifts(q, h, theta, used, lifts);
      if (current && previous && *current == *previous) return *current;
      previous = std::move(current);
    }
    if (cyclic) throw std::runtime_error("integer lift did not stabilize");
  }
  throw std::runtime_error("no cyclic Hecke operator on the cuspidal block");
}

bool quasicuspidal_test(const PacketLift& e, uint32_t ell, uint32_t p) {
  if (ell == p) throw std::invalid_argument("witness prime equals p");
  for (const auto& k : residue_fields(e, p)) {
    auto poly = residue_polynomial(e, k, ell);
    if (poly.degree() != 3) return false;
    if (!PolyRing<ExtField>(k).roots(poly).empty()) return false;
  }
  return true;
}

std::string residue_hecke_polynomial(const PacketLift& e, uint32_t ell, uint32_t p) {
  auto fields = residue_fields(e, p);
  const auto& k = fields.at(0);
  return PolyRing<ExtField>(k).to_string(residue_polynomial(e, k, ell), "X");
}

bool ordinary_test(const PacketLift& e, uint32_t p) {
  if (e.h != 0) throw std::domain_error("ordinarity is implemented for trivial weight only");
  for (const auto& k : residue_fields(e, p)) {
    auto t = k.generator();
    if (k.is_zero(value_at(e, k, t, {p, 1})) || k.is_zero(value_at(e, k, t, {p, 2}))) return false;
  }
  return true;
}

bool congruent_test(const PacketLift& e1, const PacketLift& e2, uint32_t p, const std::vector<uint32_t>& primes) {
  PrimeField f(p);
  for (const auto& k1 : residue_fields(e1, p))
    for (const auto& k2 : residue_fields(e2, p)) {
      const unsigned m = std::lcm(k1.degree(), k2.degree());
      ExtField l = ExtField::with_degree(f, m);
      PolyRing<ExtField> ring(l);
      auto b1 = ring.roots(lift_poly(l, k1.modulus())).at(0);
      for (auto& b2 : ring.roots(lift_poly(l, k2.modulus()))) {
        bool same = true;
        for (auto ell : primes)
          for (unsigned k = 1; k <= 3 && same; ++k)
            same = l.equal(value_at(e1, l, b1, {ell, k}), value_at(e2, l, b2, {ell, k}));
        if (same) return true;
      }
    }
  return false;
}

unsigned vanishing_weight(uint32_t p) { return p == 2 ? 2 : p - 1; }

RigidityReport rigidity_certificate(uint32_t q, uint32_t p, uint32_t witness, const RigidityOptions& opts) {
  if (!is_prime(p) || p == q) throw std::invalid_argument("p must be a prime different from q");
  return rigidity_certificate(lift_cuspidal(q, 0, opts.lift), p, witness, opts);
}

RigidityReport rigidity_certificate(const PacketLift& lift, uint32_t p, uint32_t witness, const RigidityOptions& opts) {
  const uint32_t q = lift.q;
  if (!is_prime(p) || p == q) throw std::invalid_argument("p must be a prime different from q");
  if (lift.h != 0) throw std::invalid_argument("rigidity certificate needs a trivial-weight packet");
  for (auto r : opts.vanishing_moduli)
    if (r == p) throw std::invalid_argument("p must differ from every modulus");
  RigidityReport rep;
  rep.q = q;
  rep.p = p;
  rep.witness = witness;
  rep.lift = lift;
  if (rep.lift.dimension() == 0) throw std::runtime_error("no cuspidal packet at level " + std::to_string(q));
  rep.quasicuspidal = quasicuspidal_test(rep.lift, witness, p);
  rep.residue_polynomial = residue_hecke_polynomial(rep.lift, witness, p);
  rep.ordinary = ordinary_test(rep.lift, p);
  rep.g = vanishing_weight(p);
  std::vector<ModularDim> dims;
  for (auto r : opts.vanishing_moduli)
    dims.push_back({r, opts.dims ? opts.dims(q, rep.g, r) : h3_dim(q, rep.g, r)});
  rep.vanishing = certify_cuspidal(q, rep.g, dims);
  rep.rigid = rep.quasicuspidal && rep.ordinary && rep.vanishing.verdict == Verdict::CertifiedZero;
  return rep;
}

}  // namespace arithcoh
