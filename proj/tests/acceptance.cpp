// One line per acceptance criterion. Every check is exact; the only numeric
// tolerance is the wall-clock budget of criterion 1.
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "arithcoh/hecke.hpp"
#include "arithcoh/pipeline.hpp"

using namespace arithcoh;

namespace {

constexpr double kWeightModuleBudgetSeconds = 5.0;
const std::vector<uint32_t> kModuli{149, 151, 163};
const std::vector<uint32_t> kTwoModuli{149, 151};

struct Outcome {
  bool pass = false;
  std::string detail;  // deterministic part of the output
};

std::vector<uint32_t> primes_up_to(uint32_t n) {
  std::vector<uint32_t> out;
  for (uint32_t q = 2; q <= n; ++q)
    if (is_prime(q)) out.push_back(q);
  return out;
}

std::shared_ptr<SymbolSpace> space(uint32_t q, unsigned h, uint32_t r) {
  return std::make_shared<SymbolSpace>(std::make_shared<CosetTable>(q), std::make_shared<WeightModule>(h, PrimeField(r)));
}

// Spaces whose Hecke commutativity criterion 6 checks.
struct SpaceKey {
  uint32_t q;
  unsigned h;
  uint32_t r;
};
std::vector<SpaceKey> g_spaces;

Outcome weight_modules() {
  Outcome o{true, ""};
  size_t checked = 0;
  for (uint32_t r : kModuli)
    for (unsigned h = 0; h <= 6; ++h) {
      const size_t d = WeightModule(h, PrimeField(r)).dim();
      ++checked;
      if (d != static_cast<size_t>((h + 1) * (h + 1) * (h + 1))) {
        o.pass = false;
        o.detail += " h=" + std::to_string(h) + ",r=" + std::to_string(r) + ":" + std::to_string(d);
      }
    }
  o.detail = std::to_string(checked) + " modules" + (o.pass ? " have dimension (h+1)^3" : " mismatched:" + o.detail);
  return o;
}

Outcome dimension_sweep(unsigned h, uint32_t qmax, const std::vector<uint32_t>& moduli,
                        const std::function<size_t(uint32_t)>& expected) {
  Outcome o{true, ""};
  std::string bad;
  size_t checked = 0;
  for (uint32_t q : primes_up_to(qmax))
    for (uint32_t r : moduli) {
      const size_t d = h3_dim(q, h, r);
      g_spaces.push_back({q, h, r});
      ++checked;
      if (d != expected(q)) {
        o.pass = false;
        bad += " q=" + std::to_string(q) + ",r=" + std::to_string(r) + ":" + std::to_string(d) + "!=" +
               std::to_string(expected(q));
      }
    }
  o.detail = std::to_string(checked) + " spaces" + (o.pass ? " match" : " mismatched:" + bad);
  return o;
}

Outcome trivial_ladder() {
  auto low = dimension_sweep(0, 47, kTwoModuli, [](uint32_t q) { return size_t(boundary_dim(q, 0).value); });
  Outcome o{low.pass, "q<=47: " + low.detail};
  for (uint32_t r : kTwoModuli) {
    const size_t d = h3_dim(89, 0, r);
    g_spaces.push_back({89, 0, r});
    const size_t want = 2 * cuspform_dim(2, 89) + 3 + 2;
    o.detail += "; q=89,r=" + std::to_string(r) + ": " + std::to_string(d) + (d == want ? "==" : "!=") + std::to_string(want);
    o.pass = o.pass && d == want;
  }
  return o;
}

Outcome eisenstein_spectra() {
  Outcome o{true, ""};
  for (uint32_t q : {11u, 13u}) {
    auto s = space(q, 0, 149);
    const auto& f = s->field();
    PolyRing<PrimeField> ring(f);
    for (uint32_t ell : {2u, 3u}) {
      auto t = hecke_matrix(*s, ell, 1);
      const uint32_t target = f.from_int(1 + ell + ell * ell);
      const auto cp = charpoly(f, t);
      const bool hit = s->h3_dim() > 0 && f.is_zero(ring.eval(cp, target));
      std::string spec;
      for (auto& fac : ring.factor(cp))
        spec += (spec.empty() ? "" : ",") + (fac.factor.degree() == 1 ? std::to_string(f.to_signed(f.neg(fac.factor.c[0])))
                                                                       : "deg" + std::to_string(fac.factor.degree()));
      o.detail += (o.detail.empty() ? "" : "; ") + std::string("q=") + std::to_string(q) + ",l=" + std::to_string(ell) +
                  " dim=" + std::to_string(s->h3_dim()) + " spectrum={" + spec + "} " + (hit ? "contains " : "lacks ") +
                  std::to_string(1 + ell + ell * ell);
      o.pass = o.pass && hit;
    }
  }
  return o;
}

Outcome commutativity() {
  Outcome o{true, ""};
  size_t checked = 0, nonzero = 0;
  for (auto k : g_spaces) {
    auto s = space(k.q, k.h, k.r);
    if (s->h3_dim() == 0) {
      ++checked;
      continue;
    }
    ++nonzero;
    ++checked;
    const auto& f = s->field();
    // T(2,1), T(3,1), or the next primes when 2 or 3 is the level.
    std::vector<uint32_t> ells;
    for (uint32_t l = 2; ells.size() < 2; ++l)
      if (is_prime(l) && l != k.q && l != k.r) ells.push_back(l);
    auto a = hecke_matrix(*s, ells[0], 1), b = hecke_matrix(*s, ells[1], 1);
    if (!(multiply(f, a, b) == multiply(f, b, a))) {
      o.pass = false;
      o.detail += " q=" + std::to_string(k.q) + ",h=" + std::to_string(k.h) + ",r=" + std::to_string(k.r);
    }
  }
  o.detail = std::to_string(checked) + " spaces (" + std::to_string(nonzero) + " nonzero)" +
             (o.pass ? " commute" : " fail:" + o.detail);
  return o;
}

Outcome quasicuspidality() {
  Outcome o{true, ""};
  for (auto [q, p] : {std::pair{89u, 3u}, {61u, 5u}}) {
    LiftOptions opts;
    opts.moduli = kModuli;
    auto e = lift_cuspidal(q, 0, opts);
    bool ok = e.dimension() > 0 && e.moduli.size() >= 3;
    std::string poly = "-";
    if (ok) {
      ok = quasicuspidal_test(e, 2, p);
      poly = residue_hecke_polynomial(e, 2, p);
    }
    std::string m;
    for (auto c : e.minimal_poly) m += (m.empty() ? "" : " ") + std::to_string(c);
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("q=") + std::to_string(q) + " M=[" + m + "] over " +
                std::to_string(e.moduli.size()) + " moduli, P_2 mod " + std::to_string(p) + " = " + poly +
                (ok ? " irreducible" : " reducible");
    o.pass = o.pass && ok;
  }
  return o;
}

Outcome rigidity() {
  Outcome o{true, ""};
  RunConfig cfg;
  cfg.moduli = kModuli;
  cfg.threads = 1;
  for (auto [q, p] : {std::pair{89u, 3u}, {61u, 5u}}) {
    Pipeline pipe(cfg, nullptr);
    auto rep = pipe.rigid(q, p, 2);
    std::string dims;
    for (auto& d : rep.vanishing.computed) dims += (dims.empty() ? "" : ",") + std::to_string(d.r) + ":" + std::to_string(d.dim);
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("rigid --q ") + std::to_string(q) + " --p " +
                std::to_string(p) + ": quasicusp=" + (rep.quasicuspidal ? "yes" : "no") +
                " ordinary=" + (rep.ordinary ? "yes" : "no") + " H3(V_" + std::to_string(rep.g) + ")={" + dims +
                "} boundary=" + std::to_string(rep.vanishing.boundary) + " " + to_string(rep.vanishing.verdict) +
                " verdict=" + (rep.rigid ? "rigid" : "not-certified");
    o.pass = o.pass && rep.rigid;
  }
  return o;
}

struct Criterion {
  int id;
  std::string name;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "weight-module dimensions", weight_modules},
      {2, "odd-weight vanishing q<=31",
       [] { return dimension_sweep(1, 31, kTwoModuli, [](uint32_t) { return size_t(0); }); }},
      {3, "even-weight boundary match q<=23",
       [] { return dimension_sweep(2, 23, kTwoModuli, [](uint32_t q) { return size_t(boundary_dim(q, 2).value); }); }},
      {4, "trivial-coefficient ladder", trivial_ladder},
      {5, "Eisenstein spectra", eisenstein_spectra},
      {6, "Hecke commutativity", commutativity},
      {7, "quasicuspidality reproduction", quasicuspidality},
      {8, "rigidity end-to-end", rigidity},
  };

  bool all = true;
  std::vector<std::string> first, second;
  for (int pass = 0; pass < 2; ++pass) {
    g_spaces.clear();
    for (auto& c : criteria) {
      const auto t0 = std::chrono::steady_clock::now();
      Outcome o;
      try {
        o = c.run();
      } catch (const std::exception& e) {
        o = {false, std::string("error: ") + e.what()};
      }
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (c.id == 1 && secs >= kWeightModuleBudgetSeconds) {
        o.pass = false;
        o.detail += " (over the time budget)";
      }
      (pass == 0 ? first : second).push_back((o.pass ? "PASS " : "FAIL ") + o.detail);
      if (pass == 0) {
        std::printf("[%s] %d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), o.detail.c_str(), secs);
        std::fflush(stdout);
        all = all && o.pass;
      }
    }
  }
  std::string diff;
  for (size_t i = 0; i < first.size(); ++i)
    if (first[i] != second[i]) diff += " " + std::to_string(criteria[i].id);
  const bool det = diff.empty();
  std::printf("[%s] 9 determinism: %s\n", det ? "PASS" : "FAIL",
              det ? "all criterion outputs identical across two runs" : ("outputs differ for criteria" + diff).c_str());
  all = all && det;
  return all ? 0 : 1;
}
