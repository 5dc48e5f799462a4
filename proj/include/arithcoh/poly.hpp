#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace arithcoh {

// Dense univariate polynomial, coefficients low to high. The zero polynomial
// has no coefficients; otherwise the leading coefficient is nonzero.
template <class F>
struct Poly {
  using Elem = typename F::Elem;
  std::vector<Elem> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  const Elem& leading() const { return c.back(); }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }
};

template <class F>
struct PolyFactor {
  Poly<F> factor;
  unsigned multiplicity;
};

// Arithmetic in F[X]. Factorization routines assume F is finite; equal-degree
// splitting needs odd characteristic.
template <class F>
class PolyRing {
 public:
  using Elem = typename F::Elem;
  using P = Poly<F>;

  explicit PolyRing(F field, uint64_t seed = 0x5eed) : f_(std::move(field)), rng_(seed) {}

  const F& field() const { return f_; }

  P make(std::vector<Elem> coeffs) const {
    P p{std::move(coeffs)};
    trim(p);
    return p;
  }
  P zero() const { return P{}; }
  P constant(const Elem& a) const { return make({a}); }
  P one() const { return constant(f_.one()); }
  P x() const { return make({f_.zero(), f_.one()}); }
  P monomial(const Elem& a, unsigned deg) const {
    std::vector<Elem> v(deg + 1, f_.zero());
    v[deg] = a;
    return make(std::move(v));
  }

  void trim(P& p) const {
    while (!p.c.empty() && f_.is_zero(p.c.back())) p.c.pop_back();
  }

  Elem coeff(const P& p, size_t i) const { return i < p.c.size() ? p.c[i] : f_.zero(); }

  P add(const P& a, const P& b) const {
    std::vector<Elem> v(std::max(a.c.size(), b.c.size()), f_.zero());
    for (size_t i = 0; i < v.size(); ++i) v[i] = f_.add(coeff(a, i), coeff(b, i));
    return make(std::move(v));
  }
  P sub(const P& a, const P& b) const {
    std::vector<Elem> v(std::max(a.c.size(), b.c.size()), f_.zero());
    for (size_t i = 0; i < v.size(); ++i) v[i] = f_.sub(coeff(a, i), coeff(b, i));
    return make(std::move(v));
  }
  P neg(const P& a) const {
    P r = a;
    for (auto& e : r.c) e = f_.neg(e);
    return r;
  }
  P scale(const P& a, const Elem& s) const {
    std::vector<Elem> v = a.c;
    for (auto& e : v) e = f_.mul(e, s);
    return make(std::move(v));
  }
  P mul(const P& a, const P& b) const {
    if (a.is_zero() || b.is_zero()) return zero();
    std::vector<Elem> v(a.c.size() + b.c.size() - 1, f_.zero());
    for (size_t i = 0; i < a.c.size(); ++i) {
      if (f_.is_zero(a.c[i])) continue;
      for (size_t j = 0; j < b.c.size(); ++j) v[i + j] = f_.add(v[i + j], f_.mul(a.c[i], b.c[j]));
    }
    return make(std::move(v));
  }

  std::pair<P, P> divmod(const P& a, const P& b) const {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree()) return {zero(), a};
    std::vector<Elem> r = a.c;
    std::vector<Elem> q(a.c.size() - b.c.size() + 1, f_.zero());
    Elem lead_inv = f_.inv(b.leading());
    for (int i = a.degree() - b.degree(); i >= 0; --i) {
      Elem t = f_.mul(r[i + b.degree()], lead_inv);
      q[i] = t;
      if (f_.is_zero(t)) continue;
      for (int j = 0; j <= b.degree(); ++j) r[i + j] = f_.sub(r[i + j], f_.mul(t, b.c[j]));
    }
    r.resize(b.c.size() - 1);
    return {make(std::move(q)), make(std::move(r))};
  }
  P mod(const P& a, const P& m) const { return divmod(a, m).second; }
  P div(const P& a, const P& m) const { return divmod(a, m).first; }

  P monic(const P& a) const {
    if (a.is_zero()) return a;
    return scale(a, f_.inv(a.leading()));
  }

  P gcd(P a, P b) const {
    while (!b.is_zero()) {
      P r = mod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }

  P mulmod(const P& a, const P& b, const P& m) const { return mod(mul(a, b), m); }

  P powmod(P base, uint64_t e, const P& m) const {
    P result = mod(one(), m);
    base = mod(base, m);
    while (e) {
      if (e & 1) result = mulmod(result, base, m);
      base = mulmod(base, base, m);
      e >>= 1;
    }
    return result;
  }

  // a^|F| mod m, computed as repeated characteristic powers.
  P frobenius_mod(const P& a, const P& m) const {
    P r = mod(a, m);
    for (unsigned i = 0; i < f_.degree(); ++i) r = powmod(r, f_.characteristic(), m);
    return r;
  }

  P derivative(const P& a) const {
    if (a.c.size() <= 1) return zero();
    std::vector<Elem> v(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i) v[i - 1] = f_.mul(f_.from_int(static_cast<int64_t>(i)), a.c[i]);
    return make(std::move(v));
  }

  Elem eval(const P& a, const Elem& x) const {
    Elem r = f_.zero();
    for (size_t i = a.c.size(); i-- > 0;) r = f_.add(f_.mul(r, x), a.c[i]);
    return r;
  }

  bool is_one(const P& a) const { return a.c.size() == 1 && f_.equal(a.c[0], f_.one()); }

  // Squarefree decomposition of a monic polynomial: pairs (g, i) with g squarefree.
  std::vector<PolyFactor<F>> squarefree(const P& input) const {
    std::vector<PolyFactor<F>> out;
    P f = monic(input);
    if (f.degree() < 1) return out;
    P g = derivative(f);
    if (g.is_zero()) {
      for (auto& fac : squarefree(pth_root(f))) out.push_back({fac.factor, fac.multiplicity * f_.characteristic()});
      return out;
    }
    P c = gcd(f, g);
    P w = div(f, c);
    unsigned i = 1;
    while (!is_one(w)) {
      P y = gcd(w, c);
      P fac = div(w, y);
      if (fac.degree() > 0) out.push_back({monic(fac), i});
      w = y;
      c = div(c, y);
      ++i;
    }
    if (!is_one(c)) {
      for (auto& fac : squarefree(pth_root(c))) out.push_back({fac.factor, fac.multiplicity * f_.characteristic()});
    }
    return out;
  }

  // Distinct-degree factorization of a monic squarefree polynomial.
  std::vector<std::pair<P, unsigned>> distinct_degree(const P& input) const {
    std::vector<std::pair<P, unsigned>> out;
    P f = monic(input);
    P h = x();
    unsigned i = 1;
    while (f.degree() >= static_cast<int>(2 * i)) {
      h = frobenius_mod(h, f);
      P g = gcd(f, sub(h, x()));
      if (!is_one(g)) {
        out.push_back({g, i});
        f = div(f, g);
        h = mod(h, f);
      }
      ++i;
    }
    if (f.degree() > 0) out.push_back({f, static_cast<unsigned>(f.degree())});
    return out;
  }

  // Splits a monic squarefree product of irreducibles of common degree d.
  std::vector<P> equal_degree(const P& f, unsigned d) {
    if (f.degree() == static_cast<int>(d)) return {f};
    if (f_.characteristic() == 2) throw std::domain_error("equal-degree splitting needs odd characteristic");
    std::vector<P> parts{f};
    const size_t target = static_cast<size_t>(f.degree()) / d;
    const unsigned frob_steps = d * f_.degree();
    while (parts.size() < target) {
      std::vector<Elem> coeffs(static_cast<size_t>(f.degree()));
      for (auto& e : coeffs) e = f_.random(rng_);
      P a = make(std::move(coeffs));
      if (a.degree() < 1) continue;
      // a^((Q^d - 1)/2) = (prod_{i < d*deg F} a^(p^i))^((p-1)/2)
      P cur = mod(a, f);
      P prod = cur;
      for (unsigned i = 1; i < frob_steps; ++i) {
        cur = powmod(cur, f_.characteristic(), f);
        prod = mulmod(prod, cur, f);
      }
      P b = sub(powmod(prod, (f_.characteristic() - 1) / 2, f), one());
      std::vector<P> next;
      for (auto& u : parts) {
        if (u.degree() == static_cast<int>(d)) {
          next.push_back(u);
          continue;
        }
        P g = gcd(u, b);
        if (g.degree() > 0 && g.degree() < u.degree()) {
          next.push_back(g);
          next.push_back(div(u, g));
        } else {
          next.push_back(u);
        }
      }
      parts = std::move(next);
    }
    return parts;
  }

  // Full factorization into monic irreducibles with multiplicities, sorted by
  // (degree, coefficients) for determinism.
  std::vector<PolyFactor<F>> factor(const P& f) {
    if (f.degree() < 1) return {};
    std::vector<PolyFactor<F>> out;
    for (auto& sq : squarefree(f)) {
      for (auto& [part, d] : distinct_degree(sq.factor))
        for (auto& irr : equal_degree(part, d)) out.push_back({irr, sq.multiplicity});
    }
    std::sort(out.begin(), out.end(), [this](const PolyFactor<F>& a, const PolyFactor<F>& b) {
      if (a.factor.degree() != b.factor.degree()) return a.factor.degree() < b.factor.degree();
      return key(a.factor) < key(b.factor);
    });
    return out;
  }

  // Distinct roots in F.
  std::vector<Elem> roots(const P& f) {
    std::vector<Elem> out;
    if (f.degree() < 1) return out;
    P g = monic(f);
    P lin = gcd(g, sub(frobenius_mod(x(), g), x()));
    if (lin.degree() < 1) return out;
    for (auto& part : equal_degree(lin, 1)) out.push_back(f_.neg(part.c[0]));
    std::sort(out.begin(), out.end());
    return out;
  }

  bool is_irreducible(const P& f) const {
    if (f.degree() < 1) throw std::invalid_argument("irreducibility of a constant polynomial");
    if (f.degree() == 1) return true;
    if constexpr (requires { typename F::Elem; F::kIsPrimeField; }) {
      if (f.degree() <= 3 && f_.characteristic() <= 1000) {
        for (uint32_t v = 0; v < f_.characteristic(); ++v)
          if (f_.is_zero(eval(f, f_.from_int(v)))) return false;
        return true;
      }
    }
    P g = monic(f);
    P d = derivative(g);
    if (d.is_zero() || !is_one(gcd(g, d))) return false;
    auto parts = distinct_degree(g);
    return parts.size() == 1 && parts[0].second == static_cast<unsigned>(g.degree());
  }

  std::string to_string(const P& p, const std::string& var = "x") const {
    if (p.is_zero()) return "0";
    std::string s;
    for (size_t i = p.c.size(); i-- > 0;) {
      if (f_.is_zero(p.c[i])) continue;
      if (!s.empty()) s += " + ";
      s += "(" + f_.to_string(p.c[i]) + ")";
      if (i > 0) s += "*" + var + (i > 1 ? "^" + std::to_string(i) : "");
    }
    return s;
  }

 private:
  P pth_root(const P& f) const {
    const unsigned p = f_.characteristic();
    std::vector<Elem> v(f.c.size() / p + 1, f_.zero());
    for (size_t i = 0; i < f.c.size(); i += p) v[i / p] = f_.pth_root(f.c[i]);
    return make(std::move(v));
  }

  std::vector<uint64_t> key(const P& p) const {
    std::vector<uint64_t> k;
    for (size_t i = p.c.size(); i-- > 0;) {
      if constexpr (std::is_integral_v<Elem>) {
        k.push_back(p.c[i]);
      } else {
        for (auto v : p.c[i]) k.push_back(v);
      }
    }
    return k;
  }

  F f_;
  std::mt19937_64 rng_;
};

}  // namespace arithcoh
