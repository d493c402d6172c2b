#include "floq/hamiltonian.hpp"

#include <stdexcept>
#include <string>
#include <vector>

#include "floq/errors.hpp"

namespace floq {

Eigen::MatrixXd build_hamiltonian(const ChainConfig& config, const SectorBasis& basis) {
  validate_config(config);
  if (basis.L != config.L)
    throw std::invalid_argument("build_hamiltonian: basis has L=" + std::to_string(basis.L) +
                                ", config has L=" + std::to_string(config.L));

  const int L = config.L;
  const int n = basis.dim();

  std::vector<double> jx(L, 0.0), jz(L, 0.0);
  for (int d = 1; d < L; ++d) {
    jx[d] = power_law_coupling(config.J_x, config.a, d);
    jz[d] = power_law_coupling(config.J_z, config.b, d);
  }

  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const std::uint32_t c = basis.state(k);
    double diag = 0.0;
    for (int i = 1; i <= L; ++i) {
      const bool up_i = (c >> (L - i)) & 1u;
      for (int j = i + 1; j <= L; ++j) {
        const bool up_j = (c >> (L - j)) & 1u;
        diag -= jz[j - i] * (up_i ? 0.5 : -0.5) * (up_j ? 0.5 : -0.5);
        if (up_i != up_j && jx[j - i] != 0.0) {
          // pair exchange: the flipped configuration stays in the sector
          const std::uint32_t partner = c ^ ((1u << (L - i)) | (1u << (L - j)));
          H(basis.rank(partner), k) += -0.5 * jx[j - i];
        }
      }
    }
    H(k, k) = diag;
  }
  return H;
}

HermitianSpectrum diagonalize_hermitian(const Eigen::Ref<const Eigen::MatrixXd>& H) {
  if (H.rows() != H.cols())
    throw std::invalid_argument("diagonalize_hermitian: matrix not square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H);
  if (solver.info() != Eigen::Success)
    throw NumericalError("diagonalize_hermitian: eigensolver failed to converge (dim " +
                         std::to_string(H.rows()) + ")");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

}  // namespace floq
