#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>

#include "doctest.h"
#include "floq/floquet.hpp"
#include "oracles.hpp"

using namespace floq;
using namespace std::complex_literals;

namespace {

constexpr double kPi = std::numbers::pi;

ChainConfig uniform_config(int L, double exponent, double tau) {
  ChainConfig c;
  c.L = L;
  c.a = exponent;
  c.b = exponent;
  c.tau = tau;
  return c;
}

}  // namespace

TEST_SUITE("floquet") {
  TEST_CASE("zero kick strength gives exact zeros") {
    SplitMix64 stream(11);
    const KickAngles kick = sample_kick_angles(0.0, 12, stream);
    CHECK(kick.angles.cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("kick angles are deterministic in the stream seed") {
    SplitMix64 s1(42), s2(42);
    const KickAngles k1 = sample_kick_angles(kPi, 16, s1);
    const KickAngles k2 = sample_kick_angles(kPi, 16, s2);
    CHECK((k1.angles - k2.angles).cwiseAbs().maxCoeff() == 0.0);
    SplitMix64 s3(43);
    CHECK((sample_kick_angles(kPi, 16, s3).angles - k1.angles).cwiseAbs().maxCoeff() > 0.0);
  }

  TEST_CASE("kick angles fill [-theta/2, theta/2] uniformly") {
    SplitMix64 stream(5);
    const int n = 10000;
    double sum = 0.0;
    double lo = 1e9, hi = -1e9;
    for (int i = 0; i < n / 10; ++i) {
      const KickAngles k = sample_kick_angles(kPi, 10, stream);
      sum += k.angles.sum();
      lo = std::min(lo, k.angles.minCoeff());
      hi = std::max(hi, k.angles.maxCoeff());
    }
    CHECK(lo >= -kPi / 2);
    CHECK(hi <= kPi / 2);
    // mean of n uniforms on [-pi/2, pi/2]: sigma = (pi/sqrt(12))/sqrt(n)
    const double three_sigma = 3.0 * (kPi / std::sqrt(12.0)) / std::sqrt(double(n));
    CHECK(std::abs(sum / n) < three_sigma);
  }

  TEST_CASE("theta outside [0, pi] is rejected") {
    SplitMix64 stream(1);
    CHECK_THROWS_AS(sample_kick_angles(-0.1, 4, stream), std::invalid_argument);
    CHECK_THROWS_AS(sample_kick_angles(kPi + 0.1, 4, stream), std::invalid_argument);
  }

  TEST_CASE("kick diagonal matches the product-of-rotations oracle") {
    SplitMix64 stream(3);
    const KickAngles kick = sample_kick_angles(kPi, 4, stream);
    const SectorBasis basis = enumerate_sector(4, 2);
    const Eigen::VectorXcd diag = kick_diagonal(kick, basis);
    const Eigen::MatrixXcd full = testing::full_kick(kick.angles, 4);
    const auto idx = testing::sector_indices(basis);
    for (int k = 0; k < basis.dim(); ++k)
      CHECK(std::abs(diag(k) - full(idx[k], idx[k])) < 1e-14);
  }

  TEST_CASE("theta = 0 reduces U_F to the Hamiltonian propagator") {
    const ChainConfig config = uniform_config(6, 1.5, 0.7);
    const FloquetContext ctx = make_floquet_context(config);
    SplitMix64 stream(9);
    const KickAngles kick = sample_kick_angles(0.0, 6, stream);
    const Eigen::MatrixXcd U = build_floquet(ctx.spectrum, kick, config.tau, ctx.basis);
    CHECK((U - ctx.step).cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("tau = 0 reduces U_F to the diagonal kick") {
    const ChainConfig config = uniform_config(6, 1.5, 0.0);
    const FloquetContext ctx = make_floquet_context(config);
    SplitMix64 stream(13);
    const KickAngles kick = sample_kick_angles(kPi, 6, stream);
    const Eigen::MatrixXcd U = build_floquet(ctx.spectrum, kick, 0.0, ctx.basis);
    const Eigen::MatrixXcd R =
        Eigen::MatrixXcd(kick_diagonal(kick, ctx.basis).asDiagonal());
    CHECK((U - R).cwiseAbs().maxCoeff() < 1e-14);
  }

  TEST_CASE("U_F is unitary") {
    const ChainConfig config = uniform_config(8, 1.75, 0.4);
    const FloquetContext ctx = make_floquet_context(config);
    SplitMix64 stream(17);
    const KickAngles kick = sample_kick_angles(kPi, 8, stream);
    const Eigen::MatrixXcd U = floquet_from_context(ctx, kick);
    const Eigen::MatrixXcd gram = U.adjoint() * U;
    CHECK((gram - Eigen::MatrixXcd::Identity(U.rows(), U.cols())).cwiseAbs().maxCoeff() <
          1e-10);
  }

  TEST_CASE("diagonalize: identity has all phases zero") {
    const FloquetDecomposition d = diagonalize_floquet(Eigen::MatrixXcd::Identity(64, 64));
    CHECK(d.phases.cwiseAbs().maxCoeff() == 0.0);
    const Eigen::MatrixXcd gram = d.eigenvectors.adjoint() * d.eigenvectors;
    CHECK((gram - Eigen::MatrixXcd::Identity(64, 64)).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("diagonalize: diagonal input keeps its phases") {
    Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(2, 2);
    U(0, 0) = std::exp(1.0i * (kPi / 3));
    U(1, 1) = std::exp(-1.0i * (kPi / 4));
    const FloquetDecomposition d = diagonalize_floquet(U);
    CHECK(d.phases(0) == doctest::Approx(-kPi / 4).epsilon(1e-14));
    CHECK(d.phases(1) == doctest::Approx(kPi / 3).epsilon(1e-14));
  }

  TEST_CASE("diagonalize: near-degenerate pair across the phase seam") {
    Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(3, 3);
    U(0, 0) = std::exp(1.0i * (kPi - 1e-12));
    U(1, 1) = std::exp(-1.0i * (kPi - 1e-12));
    U(2, 2) = std::exp(1.0i * 0.3);
    const FloquetDecomposition d = diagonalize_floquet(U);
    CHECK(d.phases(0) <= d.phases(1));
    CHECK(d.phases(2) == doctest::Approx(kPi - 1e-12));
    const Eigen::MatrixXcd gram = d.eigenvectors.adjoint() * d.eigenvectors;
    CHECK((gram - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("random instance matches the full-space oracle at L=8") {
    const ChainConfig config = uniform_config(8, 1.5, 0.35);
    const FloquetContext ctx = make_floquet_context(config);
    SplitMix64 stream(23);
    const KickAngles kick = sample_kick_angles(kPi, 8, stream);
    const Eigen::MatrixXcd U = floquet_from_context(ctx, kick);

    const Eigen::MatrixXcd full = testing::full_floquet(config, kick.angles);
    const auto idx = testing::sector_indices(ctx.basis);
    Eigen::MatrixXcd block(ctx.basis.dim(), ctx.basis.dim());
    for (int r = 0; r < ctx.basis.dim(); ++r)
      for (int c = 0; c < ctx.basis.dim(); ++c) block(r, c) = full(idx[r], idx[c]);
    CHECK((U - block).cwiseAbs().maxCoeff() < 1e-12);

    const Eigen::VectorXd sector_phases = floquet_phases(U);
    const Eigen::VectorXd oracle_phases = floquet_phases(block);
    CHECK((sector_phases - oracle_phases).cwiseAbs().maxCoeff() < 1e-8);
  }

  TEST_CASE("decomposition invariants on a generic instance") {
    const ChainConfig config = uniform_config(8, 2.0, 0.25);
    const FloquetContext ctx = make_floquet_context(config);
    SplitMix64 stream(29);
    const KickAngles kick = sample_kick_angles(0.8 * kPi, 8, stream);
    const Eigen::MatrixXcd U = floquet_from_context(ctx, kick);
    const FloquetDecomposition d = diagonalize_floquet(U);

    const int n = d.dim();
    for (int k = 1; k < n; ++k) CHECK(d.phases(k) >= d.phases(k - 1));
    CHECK(d.phases.minCoeff() > -kPi);
    CHECK(d.phases.maxCoeff() <= kPi);
    const Eigen::MatrixXcd gram = d.eigenvectors.adjoint() * d.eigenvectors;
    CHECK((gram - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() <= kUnitaryTol);
    Eigen::VectorXcd lambda(n);
    for (int k = 0; k < n; ++k) lambda(k) = d.eigenvalue(k);
    const Eigen::MatrixXcd recon =
        d.eigenvectors * lambda.asDiagonal() * d.eigenvectors.adjoint();
    CHECK((recon - U).cwiseAbs().maxCoeff() <= kUnitaryTol);
    CHECK((lambda.cwiseAbs().array() - 1.0).abs().maxCoeff() <= kUnitaryTol);

    // phases-only path sees the same spectrum
    CHECK((floquet_phases(U) - d.phases).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("full-space Floquet operator conserves Sz at L=6") {
    const ChainConfig config = uniform_config(6, 1.5, 0.5);
    SplitMix64 stream(31);
    const KickAngles kick = sample_kick_angles(kPi, 6, stream);
    const Eigen::MatrixXcd full = testing::full_floquet(config, kick.angles);
    for (int r = 0; r < 64; ++r)
      for (int c = 0; c < 64; ++c)
        if (std::popcount(unsigned(r)) != std::popcount(unsigned(c)))
          CHECK(std::abs(full(r, c)) < 1e-12);
  }

  TEST_CASE("non-unitary input is rejected") {
    Eigen::MatrixXcd M = 2.0 * Eigen::MatrixXcd::Identity(4, 4);
    CHECK_THROWS_AS(floquet_phases(M), NumericalError);
    CHECK_THROWS_AS(diagonalize_floquet(M), NumericalError);
  }

  TEST_CASE("dimension mismatches are rejected") {
    const ChainConfig config = uniform_config(6, 1.0, 0.1);
    const FloquetContext ctx = make_floquet_context(config);
    SplitMix64 stream(37);
    const KickAngles kick = sample_kick_angles(kPi, 4, stream);
    CHECK_THROWS_AS(kick_diagonal(kick, ctx.basis), std::invalid_argument);
  }
}
