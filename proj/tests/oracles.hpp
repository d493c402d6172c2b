#pragma once

// Test-only reference implementations, deliberately independent of the
// library's code paths: full-Hilbert-space operators assembled from explicit
// 2x2 spin matrices via Kronecker products, a dense partial-trace entropy,
// and synthetic data generators for the fitting routines.

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "floq/analysis.hpp"
#include "floq/basis.hpp"
#include "floq/config.hpp"
#include "floq/dynamics.hpp"
#include "floq/rng.hpp"

namespace floq::testing {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B);

// Local operator at `site` (1-based) embedded in the 2^L space. Tensor order
// is site 1 (x) ... (x) site L, local basis (|down>, |up>), so the full-space
// index of a product state equals its configuration bits.
Eigen::MatrixXcd embed_site_operator(const Eigen::Matrix2cd& op, int site, int L);

Eigen::Matrix2cd spin_x();
Eigen::Matrix2cd spin_y();
Eigen::Matrix2cd spin_z_op();

// H = -sum_{i<j} [Jx/d^a (Sx Sx + Sy Sy) + Jz/d^b Sz Sz] as a dense 2^L
// matrix built from operator products (no bit tricks shared with the
// library's assembly).
Eigen::MatrixXcd full_hamiltonian(const ChainConfig& config);

// R(theta) = prod_i exp(-i theta_i Sz_i) as a product of embedded
// single-site rotations.
Eigen::MatrixXcd full_kick(const Eigen::VectorXd& angles, int L);

// R(theta) exp(-i H tau) in the full space.
Eigen::MatrixXcd full_floquet(const ChainConfig& config, const Eigen::VectorXd& angles);

// Full-space index of each sector configuration (identical to the bits).
std::vector<int> sector_indices(const SectorBasis& basis);

Eigen::VectorXcd embed_state(const Eigen::VectorXcd& amplitudes, const SectorBasis& basis);

// exp(i t phases) evolution of psi0 under a full-space unitary.
std::vector<Eigen::VectorXcd> full_evolve(const Eigen::MatrixXcd& U,
                                          const Eigen::VectorXcd& psi0,
                                          const std::vector<std::int64_t>& times);

// Half-chain entropy from the explicitly constructed reduced density matrix.
double entropy_by_partial_trace(const Eigen::VectorXcd& psi_full, int L);

class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : gen_(seed) {}
  double next();  // standard normal via Box-Muller

 private:
  SplitMix64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Sampling-statistics model for the standard error of a disorder-averaged
// mean gap ratio: ~1/sqrt(sector dimension x samples), with the empirical
// prefactor absorbing ratio-to-ratio correlations.
double model_r_stderr(int L, int samples);

// <r>(tau) curves that collapse exactly onto an asymmetric sigmoid master
// curve at (tau_c, nu), with iid Gaussian noise per point and error bars both
// set by model_r_stderr(L, samples).
ScalingDataset synthetic_collapse(double tau_c, double nu, const std::vector<int>& sizes,
                                  const std::vector<double>& taus, int samples,
                                  std::uint64_t seed);

// S(t) = c (ln t)^gamma + d (ln t)^(gamma-1) sampled on the standard log grid.
TimeSeries synthetic_log_power(double c, double gamma, double d, std::int64_t t_max,
                               int points = 120);

// S(t) = c t^gamma sampled on the standard log grid.
TimeSeries synthetic_algebraic(double c, double gamma, std::int64_t t_max,
                               int points = 120);

}  // namespace floq::testing
