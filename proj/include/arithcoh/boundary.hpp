#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace arithcoh {

// dim S_w(Gamma_0(q)), w even >= 2, q prime.
unsigned cuspform_dim(unsigned w, uint32_t q);

// Genus of X_0(q), q prime.
unsigned genus_x0(uint32_t q);

struct BoundaryDim {
  uint32_t q = 0;
  unsigned h = 0;
  unsigned value = 0;  // 2 s_{h+2}(q) + 3 for h even, 0 for h odd
};

BoundaryDim boundary_dim(uint32_t q, unsigned h);

enum class Verdict { CertifiedZero, CertifiedDim, Uncertified };

std::string to_string(Verdict v);

struct ModularDim {
  uint32_t r;
  size_t dim;
};

struct CuspidalCertificate {
  uint32_t q = 0;
  unsigned h = 0;
  std::vector<ModularDim> computed;
  unsigned boundary = 0;
  Verdict verdict = Verdict::Uncertified;
  unsigned value = 0;  // certified cuspidal dimension
  std::string reason;
};

// cuspidal_from_packets: dimension found by the packet analysis (cuspidal
// packets), required before a positive even-weight dimension is certified.
CuspidalCertificate certify_cuspidal(uint32_t q, unsigned h, const std::vector<ModularDim>& computed,
                                     std::optional<unsigned> cuspidal_from_packets = std::nullopt);

}  // namespace arithcoh
