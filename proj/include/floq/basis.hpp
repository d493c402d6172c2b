#pragma once

#include <cstdint>
#include <vector>

namespace floq {

// Fixed-magnetization sector of the L-site spin-1/2 chain.
//
// Bit convention: site i (1-based, 1..L) maps to bit (L - i), so site 1 is
// the most significant bit. A set bit is an up spin, Sz = +1/2. All index
// arithmetic across the code base relies on this one convention.
struct SectorBasis {
  int L = 0;
  int n_up = 0;
  std::vector<std::uint32_t> states;  // ascending; popcount == n_up everywhere

  int dim() const { return static_cast<int>(states.size()); }
  std::uint32_t state(int k) const { return states[static_cast<std::size_t>(k)]; }
  std::uint32_t unrank(int k) const { return state(k); }

  // Position of `config` in `states` via the combinatorial number system:
  // O(L), no search. Throws std::invalid_argument on popcount mismatch.
  int rank(std::uint32_t config) const;
};

std::uint64_t binomial(int n, int k);

// All C(L, n_up) configurations in ascending integer order.
// Requires 0 <= n_up <= L <= kMaxSites.
SectorBasis enumerate_sector(int L, int n_up);

// Sz eigenvalue (+1/2 or -1/2) of site i (1-based) in `config`.
inline double spin_z(std::uint32_t config, int site, int L) {
  return (config >> (L - site)) & 1u ? 0.5 : -0.5;
}

}  // namespace floq
