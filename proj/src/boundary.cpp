#include "arithcoh/boundary.hpp"

#include <stdexcept>

#include "arithcoh/prime_field.hpp"

namespace arithcoh {

namespace {

void require_prime(uint32_t q) {
  if (!is_prime(q)) throw std::invalid_argument("level " + std::to_string(q) + " is not prime");
}

// Elliptic point counts for Gamma_0(q).
int nu2(uint32_t q) { return q == 2 ? 1 : (q % 4 == 1 ? 2 : 0); }
int nu3(uint32_t q) { return q == 3 ? 1 : (q % 3 == 1 ? 2 : 0); }

}  // namespace

unsigned genus_x0(uint32_t q) {
  require_prime(q);
  // 12 g = 12 + mu - 3 nu2 - 4 nu3 - 6 c with mu = q + 1 and c = 2.
  const int64_t twelve_g = 12 + static_cast<int64_t>(q) + 1 - 3 * nu2(q) - 4 * nu3(q) - 12;
  if (twelve_g < 0 || twelve_g % 12) throw std::logic_error("genus formula gave a non-integer");
  return static_cast<unsigned>(twelve_g / 12);
}

unsigned cuspform_dim(unsigned w, uint32_t q) {
  if (w < 2 || w % 2) throw std::invalid_argument("cusp form weight must be even and at least 2");
  const int64_t g = genus_x0(q);
  if (w == 2) return static_cast<unsigned>(g);
  const int64_t k = w;
  const int64_t d = (k - 1) * (g - 1) + (k / 2 - 1) * 2 + nu2(q) * (k / 4) + nu3(q) * (k / 3);
  return static_cast<unsigned>(d);
}

BoundaryDim boundary_dim(uint32_t q, unsigned h) {
  require_prime(q);
  BoundaryDim b{q, h, 0};
  if (h % 2 == 0) b.value = 2 * cuspform_dim(h + 2, q) + 3;
  return b;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::CertifiedZero: return "certified-zero";
    case Verdict::CertifiedDim: return "certified-dim";
    case Verdict::Uncertified: return "uncertified";
  }
  return "uncertified";
}

CuspidalCertificate certify_cuspidal(uint32_t q, unsigned h, const std::vector<ModularDim>& computed,
                                     std::optional<unsigned> cuspidal_from_packets) {
  if (computed.empty()) throw std::invalid_argument("no computed dimensions to certify");
  CuspidalCertificate c;
  c.q = q;
  c.h = h;
  c.computed = computed;
  c.boundary = boundary_dim(q, h).value;
  const size_t d = computed[0].dim;
  for (const auto& m : computed)
    if (m.dim != d) {
      c.reason = "moduli disagree";
      return c;
    }
  if (h % 2) {
    if (d == 0) {
      c.verdict = Verdict::CertifiedZero;
    } else {
      c.reason = "nonzero odd-weight dimension";
    }
    return c;
  }
  if (d < c.boundary) {
    c.reason = "computed dimension below the boundary value";
  } else if (d == c.boundary) {
    c.verdict = Verdict::CertifiedZero;
  } else if (!cuspidal_from_packets) {
    c.reason = "excess over boundary not attributed by packet analysis";
  } else if (*cuspidal_from_packets != d - c.boundary) {
    c.reason = "packet analysis finds " + std::to_string(*cuspidal_from_packets) + " cuspidal dimensions, excess is " +
               std::to_string(d - c.boundary);
  } else {
    c.verdict = Verdict::CertifiedDim;
    c.value = static_cast<unsigned>(d - c.boundary);
  }
  return c;
}

}  // namespace arithcoh
