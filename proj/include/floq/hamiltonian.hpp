#pragma once

#include <Eigen/Dense>

#include "floq/basis.hpp"
#include "floq/config.hpp"

namespace floq {

// Eigendecomposition of a real symmetric matrix: H = V diag(E) V^T with
// eigenvalues ascending and V orthonormal.
struct HermitianSpectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;

  int dim() const { return static_cast<int>(eigenvalues.size()); }
};

// Dense sector-basis Hamiltonian
//   H = -sum_{i<j} [ J_x/|i-j|^a * 1/2 (S+_i S-_j + S-_i S+_j)
//                  + J_z/|i-j|^b * Sz_i Sz_j ],
// open boundary. The XY part connects configurations differing by one
// exchanged up/down pair; the Ising part is diagonal. Real symmetric by
// construction (every matrix element is written identically from both sides).
Eigen::MatrixXd build_hamiltonian(const ChainConfig& config, const SectorBasis& basis);

// Throws NumericalError if the solver does not converge.
HermitianSpectrum diagonalize_hermitian(const Eigen::Ref<const Eigen::MatrixXd>& H);

}  // namespace floq
