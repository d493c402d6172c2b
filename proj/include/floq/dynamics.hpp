#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "floq/basis.hpp"
#include "floq/floquet.hpp"

namespace floq {

// Normalized state in the sector basis.
struct SectorState {
  Eigen::VectorXcd amplitudes;

  int dim() const { return static_cast<int>(amplitudes.size()); }
  double norm() const { return amplitudes.norm(); }
};

// Stroboscopic sampling times (whole kick counts), strictly increasing.
struct TimeGrid {
  std::vector<std::int64_t> times;

  std::size_t size() const { return times.size(); }
};

// `points` log-spaced kick counts from 1 to t_max, rounded to unique
// integers (so the realized count can be smaller for short ranges).
TimeGrid log_time_grid(std::int64_t t_max, int points = 120);

// |up down up down ...>: up spins on odd sites. Requires even L, n_up = L/2.
SectorState neel_state(const SectorBasis& basis);

// psi(t) = V diag(exp(i t phi)) V^dagger psi0 for each t: exact powers of
// U_F through its phases, O(dim^2) per sampled time. Outputs renormalized;
// throws NumericalError if the raw norm drifts beyond 1e-6.
std::vector<SectorState> evolve_stroboscopic(const FloquetDecomposition& decomp,
                                             const SectorState& psi0,
                                             std::span<const std::int64_t> times);

// Half-chain von Neumann entropy, cut between sites L/2 and L/2+1, natural
// log. Amplitudes regroup into blocks of fixed left-half up-count; the
// squared singular values of the blocks are the Schmidt weights.
// Result in [0, (L/2) ln 2].
double entanglement_entropy(const SectorState& state, const SectorBasis& basis);

// Staggered magnetization I = (2/L) sum_i (-1)^(i+1) <Sz_i>, +1 for the
// Neel state by construction. Result in [-1, 1].
double imbalance(const SectorState& state, const SectorBasis& basis);

}  // namespace floq
