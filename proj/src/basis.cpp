#include "floq/basis.hpp"

#include <bit>
#include <stdexcept>
#include <string>

#include "floq/config.hpp"

namespace floq {

namespace {

struct BinomialTable {
  // Pascal triangle up to kMaxSites; C(24,12) = 2704156 fits easily.
  std::uint64_t c[kMaxSites + 1][kMaxSites + 1] = {};
  BinomialTable() {
    for (int n = 0; n <= kMaxSites; ++n) {
      c[n][0] = 1;
      for (int k = 1; k <= n; ++k)
        c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0);
    }
  }
};

const BinomialTable kBinomial;

}  // namespace

std::uint64_t binomial(int n, int k) {
  if (n < 0 || n > kMaxSites) throw std::invalid_argument("binomial: n out of range");
  if (k < 0 || k > n) return 0;
  return kBinomial.c[n][k];
}

SectorBasis enumerate_sector(int L, int n_up) {
  if (L < 1 || L > kMaxSites)
    throw std::invalid_argument("enumerate_sector: L must be in [1, " +
                                std::to_string(kMaxSites) + "], got " + std::to_string(L));
  if (n_up < 0 || n_up > L)
    throw std::invalid_argument("enumerate_sector: n_up must be in [0, L], got " +
                                std::to_string(n_up));

  SectorBasis basis;
  basis.L = L;
  basis.n_up = n_up;
  basis.states.reserve(binomial(L, n_up));

  if (n_up == 0) {
    basis.states.push_back(0);
    return basis;
  }
  // Gosper's hack: next integer with the same popcount, in ascending order.
  const std::uint32_t limit = (L == 32) ? 0u : (1u << L);
  std::uint32_t v = (1u << n_up) - 1;
  while (v < limit) {
    basis.states.push_back(v);
    std::uint32_t c = v & (~v + 1);
    std::uint32_t r = v + c;
    v = (((r ^ v) >> 2) / c) | r;
  }
  return basis;
}

int SectorBasis::rank(std::uint32_t config) const {
  if (std::popcount(config) != n_up || (config >> L) != 0)
    throw std::invalid_argument("rank: configuration not in sector");
  // Count sector members strictly below `config`: for every set bit at
  // position p, the members sharing the higher bits but clear at p place
  // their remaining ones among the p lower positions.
  int r = 0;
  int remaining = n_up;
  for (int p = L - 1; p >= 0 && remaining > 0; --p) {
    if ((config >> p) & 1u) {
      r += static_cast<int>(kBinomial.c[p][remaining]);
      --remaining;
    }
  }
  return r;
}

}  // namespace floq
