#include "oracles.hpp"

#include <cmath>
#include <complex>

namespace floq::testing {

using namespace std::complex_literals;

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
  Eigen::MatrixXcd out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return out;
}

Eigen::Matrix2cd spin_x() {
  Eigen::Matrix2cd m;
  m << 0.0, 0.5, 0.5, 0.0;
  return m;
}

Eigen::Matrix2cd spin_y() {
  Eigen::Matrix2cd m;
  m << 0.0, -0.5i, 0.5i, 0.0;
  return m;
}

Eigen::Matrix2cd spin_z_op() {
  // local basis (|down>, |up>)
  Eigen::Matrix2cd m;
  m << -0.5, 0.0, 0.0, 0.5;
  return m;
}

Eigen::MatrixXcd embed_site_operator(const Eigen::Matrix2cd& op, int site, int L) {
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  Eigen::MatrixXcd out = (site == 1) ? Eigen::MatrixXcd(op) : Eigen::MatrixXcd(id);
  for (int s = 2; s <= L; ++s) out = kron(out, s == site ? op : id);
  return out;
}

Eigen::MatrixXcd full_hamiltonian(const ChainConfig& config) {
  const int L = config.L;
  const Eigen::Index dim = Eigen::Index(1) << L;
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(dim, dim);
  for (int i = 1; i <= L; ++i) {
    const Eigen::MatrixXcd sx_i = embed_site_operator(spin_x(), i, L);
    const Eigen::MatrixXcd sy_i = embed_site_operator(spin_y(), i, L);
    const Eigen::MatrixXcd sz_i = embed_site_operator(spin_z_op(), i, L);
    for (int j = i + 1; j <= L; ++j) {
      const double jx = power_law_coupling(config.J_x, config.a, j - i);
      const double jz = power_law_coupling(config.J_z, config.b, j - i);
      if (jx != 0.0) {
        H -= jx * (sx_i * embed_site_operator(spin_x(), j, L) +
                   sy_i * embed_site_operator(spin_y(), j, L));
      }
      if (jz != 0.0) H -= jz * (sz_i * embed_site_operator(spin_z_op(), j, L));
    }
  }
  return H;
}

Eigen::MatrixXcd full_kick(const Eigen::VectorXd& angles, int L) {
  const Eigen::Index dim = Eigen::Index(1) << L;
  Eigen::MatrixXcd R = Eigen::MatrixXcd::Identity(dim, dim);
  for (int i = 1; i <= L; ++i) {
    Eigen::Matrix2cd rot = Eigen::Matrix2cd::Zero();
    rot(0, 0) = std::exp(0.5i * angles(i - 1));   // |down>
    rot(1, 1) = std::exp(-0.5i * angles(i - 1));  // |up>
    R = embed_site_operator(rot, i, L) * R;
  }
  return R;
}

Eigen::MatrixXcd full_floquet(const ChainConfig& config, const Eigen::VectorXd& angles) {
  const Eigen::MatrixXcd H = full_hamiltonian(config);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  Eigen::VectorXcd phases(es.eigenvalues().size());
  for (Eigen::Index k = 0; k < phases.size(); ++k)
    phases(k) = std::exp(-1.0i * es.eigenvalues()(k) * config.tau);
  const Eigen::MatrixXcd expH =
      es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  return full_kick(angles, config.L) * expH;
}

std::vector<int> sector_indices(const SectorBasis& basis) {
  std::vector<int> idx;
  idx.reserve(static_cast<std::size_t>(basis.dim()));
  for (int k = 0; k < basis.dim(); ++k) idx.push_back(static_cast<int>(basis.state(k)));
  return idx;
}

Eigen::VectorXcd embed_state(const Eigen::VectorXcd& amplitudes, const SectorBasis& basis) {
  Eigen::VectorXcd full = Eigen::VectorXcd::Zero(Eigen::Index(1) << basis.L);
  for (int k = 0; k < basis.dim(); ++k) full(basis.state(k)) = amplitudes(k);
  return full;
}

std::vector<Eigen::VectorXcd> full_evolve(const Eigen::MatrixXcd& U,
                                          const Eigen::VectorXcd& psi0,
                                          const std::vector<std::int64_t>& times) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(U, true);
  const Eigen::VectorXcd coeffs = es.eigenvectors().adjoint() * psi0;
  std::vector<Eigen::VectorXcd> out;
  out.reserve(times.size());
  for (const auto t : times) {
    Eigen::VectorXcd rotated(coeffs.size());
    for (Eigen::Index k = 0; k < coeffs.size(); ++k)
      rotated(k) = std::pow(es.eigenvalues()(k), static_cast<double>(t)) * coeffs(k);
    out.push_back(es.eigenvectors() * rotated);
  }
  return out;
}

double entropy_by_partial_trace(const Eigen::VectorXcd& psi_full, int L) {
  const int half = L / 2;
  const Eigen::Index d = Eigen::Index(1) << half;
  Eigen::MatrixXcd M(d, d);
  for (Eigen::Index left = 0; left < d; ++left)
    for (Eigen::Index right = 0; right < d; ++right)
      M(left, right) = psi_full(left * d + right);
  const Eigen::MatrixXcd rho = M * M.adjoint();
  const Eigen::VectorXd lambda =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(rho).eigenvalues();
  double entropy = 0.0;
  for (Eigen::Index k = 0; k < lambda.size(); ++k)
    if (lambda(k) > 0.0) entropy -= lambda(k) * std::log(lambda(k));
  return entropy;
}

double NormalSampler::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - gen_.next_unit();  // (0, 1]
  const double u2 = gen_.next_unit();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

double model_r_stderr(int L, int samples) {
  return 0.35 / std::sqrt(static_cast<double>(binomial(L, L / 2)) *
                          static_cast<double>(samples));
}

ScalingDataset synthetic_collapse(double tau_c, double nu, const std::vector<int>& sizes,
                                  const std::vector<double>& taus, int samples,
                                  std::uint64_t seed) {
  NormalSampler gauss(seed);
  // asymmetric sigmoid between the two level-statistics plateaus
  auto master = [](double x) { return 0.386 + 0.143 * std::exp(-std::exp(-x)); };
  ScalingDataset data;
  for (const int L : sizes) {
    SizeSeries series;
    series.L = L;
    const auto n = static_cast<Eigen::Index>(taus.size());
    series.tau.resize(n);
    series.value.resize(n);
    series.error.resize(n);
    const double scale = std::pow(static_cast<double>(L), 1.0 / nu);
    const double noise = model_r_stderr(L, samples);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double tau = taus[static_cast<std::size_t>(i)];
      series.tau(i) = tau;
      series.value(i) = master((tau - tau_c) * scale) + noise * gauss.next();
      series.error(i) = noise;
    }
    data.sizes.push_back(std::move(series));
  }
  return data;
}

namespace {

TimeSeries sampled_series(std::int64_t t_max, int points,
                          const std::function<double(double)>& f) {
  const TimeGrid grid = log_time_grid(t_max, points);
  TimeSeries s;
  s.times = grid.times;
  s.value.resize(static_cast<Eigen::Index>(s.times.size()));
  s.error = Eigen::ArrayXd::Zero(static_cast<Eigen::Index>(s.times.size()));
  for (std::size_t i = 0; i < s.times.size(); ++i)
    s.value(static_cast<Eigen::Index>(i)) = f(static_cast<double>(s.times[i]));
  return s;
}

}  // namespace

TimeSeries synthetic_log_power(double c, double gamma, double d, std::int64_t t_max,
                               int points) {
  return sampled_series(t_max, points, [=](double t) {
    const double l = std::log(t);
    return l > 0.0 ? c * std::pow(l, gamma) + d * std::pow(l, gamma - 1.0) : 0.0;
  });
}

TimeSeries synthetic_algebraic(double c, double gamma, std::int64_t t_max, int points) {
  return sampled_series(t_max, points,
                        [=](double t) { return c * std::pow(t, gamma); });
}

}  // namespace floq::testing
