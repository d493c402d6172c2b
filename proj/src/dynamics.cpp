#include "floq/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "floq/errors.hpp"

namespace floq {

TimeGrid log_time_grid(std::int64_t t_max, int points) {
  if (t_max < 1) throw std::invalid_argument("log_time_grid: t_max must be >= 1");
  if (points < 1) throw std::invalid_argument("log_time_grid: points must be >= 1");
  TimeGrid grid;
  if (t_max == 1 || points == 1) {
    grid.times = {t_max};
    return grid;
  }
  const double log_max = std::log10(static_cast<double>(t_max));
  grid.times.reserve(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) {
    const double x = log_max * static_cast<double>(k) / static_cast<double>(points - 1);
    const auto t = static_cast<std::int64_t>(std::llround(std::pow(10.0, x)));
    grid.times.push_back(std::clamp<std::int64_t>(t, 1, t_max));
  }
  std::sort(grid.times.begin(), grid.times.end());
  grid.times.erase(std::unique(grid.times.begin(), grid.times.end()), grid.times.end());
  return grid;
}

SectorState neel_state(const SectorBasis& basis) {
  if (basis.L % 2 != 0)
    throw std::invalid_argument("neel_state: L must be even");
  if (basis.n_up != basis.L / 2)
    throw std::invalid_argument("neel_state: basis must be the Sz=0 sector");
  std::uint32_t config = 0;
  for (int site = 1; site <= basis.L; site += 2) config |= 1u << (basis.L - site);
  SectorState state;
  state.amplitudes = Eigen::VectorXcd::Zero(basis.dim());
  state.amplitudes(basis.rank(config)) = 1.0;
  return state;
}

std::vector<SectorState> evolve_stroboscopic(const FloquetDecomposition& decomp,
                                             const SectorState& psi0,
                                             std::span<const std::int64_t> times) {
  if (decomp.dim() != psi0.dim())
    throw std::invalid_argument("evolve_stroboscopic: dimension mismatch");
  const Eigen::VectorXcd coeffs = decomp.eigenvectors.adjoint() * psi0.amplitudes;
  std::vector<SectorState> out;
  out.reserve(times.size());
  Eigen::VectorXcd rotated(decomp.dim());
  for (const std::int64_t t : times) {
    if (t < 0) throw std::invalid_argument("evolve_stroboscopic: negative time");
    for (int k = 0; k < decomp.dim(); ++k)
      rotated(k) = std::polar(1.0, static_cast<double>(t) * decomp.phases(k)) * coeffs(k);
    SectorState state{decomp.eigenvectors * rotated};
    const double norm = state.norm();
    if (std::abs(norm - 1.0) > 1e-6)
      throw NumericalError("evolve_stroboscopic: norm drift " +
                           std::to_string(std::abs(norm - 1.0)) + " at t = " +
                           std::to_string(t));
    state.amplitudes /= norm;
    out.push_back(std::move(state));
  }
  return out;
}

double entanglement_entropy(const SectorState& state, const SectorBasis& basis) {
  if (basis.L % 2 != 0)
    throw std::invalid_argument("entanglement_entropy: L must be even");
  if (state.dim() != basis.dim())
    throw std::invalid_argument("entanglement_entropy: dimension mismatch");
  const int half = basis.L / 2;
  const std::uint32_t right_mask = (1u << half) - 1;

  // One Schmidt block per left-half up-count; blocks are orthogonal sectors
  // of the reduced density matrix, so their singular values just pool.
  const int lo = std::max(0, basis.n_up - half);
  const int hi = std::min(half, basis.n_up);
  double entropy = 0.0;
  for (int n_left = lo; n_left <= hi; ++n_left) {
    const SectorBasis left = enumerate_sector(half, n_left);
    const SectorBasis right = enumerate_sector(half, basis.n_up - n_left);
    Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(left.dim(), right.dim());
    for (int k = 0; k < basis.dim(); ++k) {
      const std::uint32_t c = basis.state(k);
      const std::uint32_t left_bits = c >> half;
      if (std::popcount(left_bits) != n_left) continue;
      block(left.rank(left_bits), right.rank(c & right_mask)) = state.amplitudes(k);
    }
    const Eigen::VectorXd sigma = block.jacobiSvd().singularValues();
    for (int s = 0; s < sigma.size(); ++s) {
      const double w = sigma(s) * sigma(s);
      if (w > 0.0) entropy -= w * std::log(w);
    }
  }
  return std::max(entropy, 0.0);
}

double imbalance(const SectorState& state, const SectorBasis& basis) {
  if (state.dim() != basis.dim())
    throw std::invalid_argument("imbalance: dimension mismatch");
  const int L = basis.L;
  double total = 0.0;
  for (int k = 0; k < basis.dim(); ++k) {
    const double w = std::norm(state.amplitudes(k));
    if (w == 0.0) continue;
    const std::uint32_t c = basis.state(k);
    double staggered = 0.0;
    for (int i = 1; i <= L; ++i) {
      const double sz = spin_z(c, i, L);
      staggered += (i % 2 == 1) ? sz : -sz;
    }
    total += w * staggered;
  }
  return 2.0 * total / static_cast<double>(L);
}

}  // namespace floq
