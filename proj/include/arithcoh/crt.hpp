#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace arithcoh {

struct Residue {
  int64_t value;
  uint64_t modulus;
};

// Combined residue class n mod M for pairwise coprime moduli, n in [0, M).
struct CrtClass {
  __int128 value;
  __int128 modulus;
};

// Throws std::invalid_argument on non-coprime moduli or if the product overflows.
CrtClass crt_combine(const std::vector<Residue>& residues);

// The unique n with |n| <= bound matching every residue, or nullopt when none
// exists. Throws std::invalid_argument unless the product of moduli exceeds 2*bound.
std::optional<int64_t> crt_reconstruct(const std::vector<Residue>& residues, int64_t bound);

// Rational reconstruction: a/b with |a|, 0 < b both at most sqrt(M/2) and
// a = b*value mod M, or nullopt.
std::optional<std::pair<int64_t, int64_t>> rational_reconstruct(const CrtClass& c);

}  // namespace arithcoh
