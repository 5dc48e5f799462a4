#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "arithcoh/boundary.hpp"
#include "arithcoh/eigenpacket.hpp"

namespace arithcoh {

struct Rational {
  int64_t num = 0;
  int64_t den = 1;
  friend bool operator==(const Rational&, const Rational&) = default;
};

// Integral form of a commutative block of Hecke eigenpackets. theta is a fixed
// integer combination of Hecke operators whose characteristic polynomial M on
// the block equals its minimal polynomial; every a(l,k) is sum_i c_i theta^i
// with rational c_i. The packets of the block are the roots of M.
struct PacketLift {
  uint32_t q = 0;
  unsigned h = 0;
  std::map<HeckeKey, int64_t> theta;
  std::vector<int64_t> minimal_poly;  // monic, low to high
  std::map<HeckeKey, std::vector<Rational>> values;
  std::vector<uint32_t> moduli;
  unsigned dimension() const { return minimal_poly.empty() ? 0 : static_cast<unsigned>(minimal_poly.size() - 1); }
  friend bool operator==(const PacketLift& a, const PacketLift& b) {
    return a.q == b.q && a.h == b.h && a.theta == b.theta && a.minimal_poly == b.minimal_poly && a.values == b.values;
  }
};

// The packet with P(X) = (1-X)(1-lX)(1-l^2 X) at every l.
PacketLift eisenstein_lift(uint32_t q, const std::vector<uint32_t>& primes);

PacketLift twist_lift(const PacketLift& e, int64_t n);

struct LiftOptions {
  std::vector<uint32_t> moduli{149, 151, 163};
  std::vector<uint32_t> primes{2, 3, 5};
  unsigned max_degree = 6;
  // Moduli added after the initial list until the lift repeats.
  unsigned max_extra_moduli = 6;
  std::function<void(const std::string&)> progress;
};

// Cuspidal block at (q, h) lifted to characteristic zero. Throws when the
// cuspidal dimension disagrees across moduli or the lift does not stabilize.
PacketLift lift_cuspidal(uint32_t q, unsigned h, const LiftOptions& opts = {});

// P(X) mod p over each residue field of Z[theta] at p; true iff irreducible
// over every one of them.
bool quasicuspidal_test(const PacketLift& e, uint32_t ell, uint32_t p);

// Hecke polynomial at ell over the first residue field, for display.
std::string residue_hecke_polynomial(const PacketLift& e, uint32_t ell, uint32_t p);

// Trivial weight only: a(p,1) and a(p,2) are p-adic units.
bool ordinary_test(const PacketLift& e, uint32_t p);

// Some residue points of e1 and e2 over F_p-bar have equal a(l,k) for all
// l in primes and k = 1, 2, 3.
bool congruent_test(const PacketLift& e1, const PacketLift& e2, uint32_t p, const std::vector<uint32_t>& primes);

using DimProvider = std::function<size_t(uint32_t q, unsigned h, uint32_t r)>;

struct RigidityReport {
  uint32_t q = 0;
  uint32_t p = 0;
  unsigned g0 = 0;
  uint32_t witness = 0;
  std::string residue_polynomial;
  bool quasicuspidal = false;
  bool ordinary = false;
  unsigned g = 0;
  CuspidalCertificate vanishing;
  bool rigid = false;
  PacketLift lift;
};

struct RigidityOptions {
  LiftOptions lift;
  std::vector<uint32_t> vanishing_moduli{149, 151, 163};
  DimProvider dims;  // defaults to a direct h3 computation
};

unsigned vanishing_weight(uint32_t p);

RigidityReport rigidity_certificate(uint32_t q, uint32_t p, uint32_t witness, const RigidityOptions& opts = {});

// Same, for an already computed cuspidal lift at trivial weight.
RigidityReport rigidity_certificate(const PacketLift& lift, uint32_t p, uint32_t witness, const RigidityOptions& opts = {});

}  // namespace arithcoh
