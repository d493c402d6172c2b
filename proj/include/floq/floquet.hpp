#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "floq/basis.hpp"
#include "floq/config.hpp"
#include "floq/hamiltonian.hpp"
#include "floq/rng.hpp"

namespace floq {

// Quenched random kick: one angle per site, drawn once per disorder sample
// and held fixed for every period.
struct KickAngles {
  Eigen::VectorXd angles;  // angles[i-1] for site i, each in [-theta/2, theta/2]
  std::uint64_t master_seed = 0;  // provenance
  std::uint64_t sample_index = 0;
};

// L iid uniform draws on [-theta/2, theta/2] from `stream`.
// Requires theta in [0, pi]. theta = 0 gives exact zeros.
KickAngles sample_kick_angles(double theta, int L, SplitMix64& stream);

// Diagonal of R(theta) in the configuration basis: entry
// exp(-i sum_i theta_i * sz_i(config)). R conserves total Sz.
Eigen::VectorXcd kick_diagonal(const KickAngles& kick, const SectorBasis& basis);

// exp(-i H tau) through the spectral decomposition of H; exact to
// eigensolver precision and reusable across kick samples.
Eigen::MatrixXcd hamiltonian_propagator(const HermitianSpectrum& spectrum, double tau);

// Single-period evolution U_F = R(theta) * exp(-i H tau).
Eigen::MatrixXcd build_floquet(const HermitianSpectrum& spectrum, const KickAngles& kick,
                               double tau, const SectorBasis& basis);

// Eigenpairs of the (normal, unitary) Floquet operator. Phases are
// arg(lambda_k) in (-pi, pi], ascending; quasi-energies E_k = -phases/tau
// are derived by callers and never stored.
struct FloquetDecomposition {
  Eigen::MatrixXcd eigenvectors;
  Eigen::VectorXd phases;

  int dim() const { return static_cast<int>(phases.size()); }
  std::complex<double> eigenvalue(int k) const {
    return std::polar(1.0, phases(k));
  }
};

// Dense non-symmetric eigensolve followed by unitarity repair: eigenvectors
// are re-orthonormalized within clusters of near-degenerate phases (circular
// gap < 1e-10, widened if the first pass leaves V short of tolerance).
// Guarantees ||V'V - I||_max <= 1e-8 and reconstruction within 1e-8,
// else throws NumericalError.
FloquetDecomposition diagonalize_floquet(const Eigen::MatrixXcd& U);

// Phases only (no eigenvectors) — the cheap path for level statistics.
// Sorted ascending in (-pi, pi]; checks |lambda_k| within 1e-8 of 1.
Eigen::VectorXd floquet_phases(const Eigen::MatrixXcd& U);

// Everything fixed across disorder samples at one parameter point.
struct FloquetContext {
  ChainConfig config;
  SectorBasis basis;
  HermitianSpectrum spectrum;
  Eigen::MatrixXcd step;  // exp(-i H tau)
};

// Builds basis (total Sz = 0 sector: n_up = L/2), Hamiltonian spectrum and
// propagator for `config`. Requires even L.
FloquetContext make_floquet_context(const ChainConfig& config);

// U_F for one disorder sample: O(dim^2) row scaling of the cached propagator.
Eigen::MatrixXcd floquet_from_context(const FloquetContext& ctx, const KickAngles& kick);

inline constexpr double kUnitaryTol = 1e-8;

}  // namespace floq
