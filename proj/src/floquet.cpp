#include "floq/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "floq/errors.hpp"

namespace floq {

namespace {

constexpr double kPi = std::numbers::pi;

// Map an angle to (-pi, pi].
double principal_phase(double phi) {
  if (phi <= -kPi) phi += 2.0 * kPi;
  if (phi > kPi) phi -= 2.0 * kPi;
  return phi;
}

Eigen::VectorXd sorted_phases(const Eigen::VectorXcd& eigenvalues,
                              std::vector<int>* order) {
  const int n = static_cast<int>(eigenvalues.size());
  Eigen::VectorXd phases(n);
  for (int k = 0; k < n; ++k) phases(k) = principal_phase(std::arg(eigenvalues(k)));
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int p, int q) { return phases(p) < phases(q); });
  Eigen::VectorXd out(n);
  for (int k = 0; k < n; ++k) out(k) = phases(idx[static_cast<std::size_t>(k)]);
  if (order) *order = std::move(idx);
  return out;
}

void check_unit_moduli(const Eigen::VectorXcd& eigenvalues) {
  const double dev = (eigenvalues.cwiseAbs().array() - 1.0).abs().maxCoeff();
  if (dev > kUnitaryTol)
    throw NumericalError("floquet: eigenvalue modulus deviates from 1 by " +
                         std::to_string(dev) + "; input not unitary?");
}

// Circular clusters of near-degenerate phases: maximal runs of sorted phases
// whose consecutive gap is below threshold, with the run touching +pi merged
// into the run touching -pi when the wrap-around gap is also small.
// Returns index groups of size >= 2.
std::vector<std::vector<int>> phase_clusters(const Eigen::VectorXd& phases,
                                             double threshold) {
  const int n = static_cast<int>(phases.size());
  std::vector<std::vector<int>> runs;
  runs.push_back({0});
  for (int k = 1; k < n; ++k) {
    if (phases(k) - phases(k - 1) < threshold)
      runs.back().push_back(k);
    else
      runs.push_back({k});
  }
  const bool wraps = n > 1 && (2.0 * kPi - (phases(n - 1) - phases(0))) < threshold;
  if (wraps && runs.size() > 1) {
    auto tail = std::move(runs.back());
    runs.pop_back();
    auto& head = runs.front();
    head.insert(head.begin(), tail.begin(), tail.end());
  }
  std::vector<std::vector<int>> clusters;
  for (auto& run : runs)
    if (run.size() > 1) clusters.push_back(std::move(run));
  return clusters;
}

// Gram-Schmidt via thin QR on the cluster columns; phases keep their slots.
void orthonormalize_clusters(Eigen::MatrixXcd& V,
                             const std::vector<std::vector<int>>& clusters) {
  for (const auto& cluster : clusters) {
    const int m = static_cast<int>(cluster.size());
    Eigen::MatrixXcd block(V.rows(), m);
    for (int c = 0; c < m; ++c) block.col(c) = V.col(cluster[static_cast<std::size_t>(c)]);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(block);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(V.rows(), m);
    // QR may flip signs/phases; irrelevant, eigenvectors carry a free phase.
    for (int c = 0; c < m; ++c) V.col(cluster[static_cast<std::size_t>(c)]) = q.col(c);
  }
}

double orthogonality_residual(const Eigen::MatrixXcd& V) {
  const int n = static_cast<int>(V.cols());
  return (V.adjoint() * V - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

}  // namespace

KickAngles sample_kick_angles(double theta, int L, SplitMix64& stream) {
  if (!(theta >= 0.0 && theta <= kPi))
    throw std::invalid_argument("sample_kick_angles: theta must be in [0, pi]");
  if (L < 1) throw std::invalid_argument("sample_kick_angles: L < 1");
  KickAngles kick;
  kick.angles.resize(L);
  for (int i = 0; i < L; ++i) kick.angles(i) = theta * (stream.next_unit() - 0.5);
  return kick;
}

Eigen::VectorXcd kick_diagonal(const KickAngles& kick, const SectorBasis& basis) {
  if (kick.angles.size() != basis.L)
    throw std::invalid_argument("kick_diagonal: angle count does not match basis L");
  const int L = basis.L;
  Eigen::VectorXcd diag(basis.dim());
  for (int k = 0; k < basis.dim(); ++k) {
    const std::uint32_t c = basis.state(k);
    double phase = 0.0;
    for (int i = 1; i <= L; ++i) phase -= kick.angles(i - 1) * spin_z(c, i, L);
    diag(k) = std::polar(1.0, phase);
  }
  return diag;
}

Eigen::MatrixXcd hamiltonian_propagator(const HermitianSpectrum& spectrum, double tau) {
  const Eigen::MatrixXd& V = spectrum.eigenvectors;
  const Eigen::ArrayXd ang = -tau * spectrum.eigenvalues.array();
  // exp(-iE tau) = cos + i sin applied in the eigenbasis; two real GEMMs
  // instead of one complex one.
  Eigen::MatrixXcd M(V.rows(), V.cols());
  M.real() = V * ang.cos().matrix().asDiagonal() * V.transpose();
  M.imag() = V * ang.sin().matrix().asDiagonal() * V.transpose();
  return M;
}

Eigen::MatrixXcd build_floquet(const HermitianSpectrum& spectrum, const KickAngles& kick,
                               double tau, const SectorBasis& basis) {
  if (spectrum.dim() != basis.dim())
    throw std::invalid_argument("build_floquet: spectrum dim " + std::to_string(spectrum.dim()) +
                                " does not match basis dim " + std::to_string(basis.dim()));
  return kick_diagonal(kick, basis).asDiagonal() * hamiltonian_propagator(spectrum, tau);
}

FloquetDecomposition diagonalize_floquet(const Eigen::MatrixXcd& U) {
  if (U.rows() != U.cols())
    throw std::invalid_argument("diagonalize_floquet: matrix not square");
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(U, true);
  if (solver.info() != Eigen::Success)
    throw NumericalError("diagonalize_floquet: eigensolver failed (dim " +
                         std::to_string(U.rows()) + ")");
  check_unit_moduli(solver.eigenvalues());

  std::vector<int> order;
  Eigen::VectorXd phases = sorted_phases(solver.eigenvalues(), &order);
  Eigen::MatrixXcd sorted(U.rows(), U.cols());
  for (int k = 0; k < static_cast<int>(order.size()); ++k)
    sorted.col(k) = solver.eigenvectors().col(order[static_cast<std::size_t>(k)]);

  // U is normal, so eigenvectors are orthogonalizable; the solver only loses
  // orthogonality inside near-degenerate clusters. Start from the contract
  // threshold and widen if a pass is not enough.
  Eigen::MatrixXcd V;
  double residual = 0.0;
  for (double threshold = 1e-10; threshold <= 1e-4; threshold *= 100.0) {
    V = sorted;
    orthonormalize_clusters(V, phase_clusters(phases, threshold));
    residual = orthogonality_residual(V);
    if (residual <= kUnitaryTol) break;
  }
  if (residual > kUnitaryTol)
    throw NumericalError("diagonalize_floquet: eigenvector orthogonality residual " +
                         std::to_string(residual) + " above tolerance");

  Eigen::VectorXcd lambda(phases.size());
  for (int k = 0; k < phases.size(); ++k) lambda(k) = std::polar(1.0, phases(k));
  const double recon = (V * lambda.asDiagonal() * V.adjoint() - U).cwiseAbs().maxCoeff();
  if (recon > kUnitaryTol)
    throw NumericalError("diagonalize_floquet: reconstruction residual " +
                         std::to_string(recon) + " above tolerance");

  return {std::move(V), std::move(phases)};
}

Eigen::VectorXd floquet_phases(const Eigen::MatrixXcd& U) {
  if (U.rows() != U.cols())
    throw std::invalid_argument("floquet_phases: matrix not square");
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(U, false);
  if (solver.info() != Eigen::Success)
    throw NumericalError("floquet_phases: eigensolver failed (dim " +
                         std::to_string(U.rows()) + ")");
  check_unit_moduli(solver.eigenvalues());
  return sorted_phases(solver.eigenvalues(), nullptr);
}

FloquetContext make_floquet_context(const ChainConfig& config) {
  validate_config(config);
  if (config.L % 2 != 0)
    throw std::invalid_argument("make_floquet_context: L must be even for the Sz=0 sector");
  FloquetContext ctx;
  ctx.config = config;
  ctx.basis = enumerate_sector(config.L, config.L / 2);
  ctx.spectrum = diagonalize_hermitian(build_hamiltonian(config, ctx.basis));
  ctx.step = hamiltonian_propagator(ctx.spectrum, config.tau);
  return ctx;
}

Eigen::MatrixXcd floquet_from_context(const FloquetContext& ctx, const KickAngles& kick) {
  return kick_diagonal(kick, ctx.basis).asDiagonal() * ctx.step;
}

}  // namespace floq
