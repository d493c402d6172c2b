#include "floq/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace floq {

namespace {

double guarded(const std::function<double(const Eigen::VectorXd&)>& f,
               const Eigen::VectorXd& x) {
  const double v = f(x);
  return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0, const Eigen::VectorXd& step,
                             int max_iterations, double tolerance) {
  const int n = static_cast<int>(x0.size());
  if (n < 1) throw std::invalid_argument("nelder_mead: empty parameter vector");
  if (step.size() != n) throw std::invalid_argument("nelder_mead: step size mismatch");

  std::vector<Eigen::VectorXd> vertex(static_cast<std::size_t>(n + 1), x0);
  std::vector<double> value(static_cast<std::size_t>(n + 1));
  for (int i = 0; i < n; ++i) vertex[static_cast<std::size_t>(i + 1)](i) += step(i);
  for (int i = 0; i <= n; ++i) value[static_cast<std::size_t>(i)] = guarded(f, vertex[static_cast<std::size_t>(i)]);

  NelderMeadResult result;
  auto record_best = [&](int best) {
    if (result.trace.empty() || value[static_cast<std::size_t>(best)] < result.trace.back().value)
      result.trace.push_back({vertex[static_cast<std::size_t>(best)], value[static_cast<std::size_t>(best)]});
  };

  std::vector<int> order(static_cast<std::size_t>(n + 1));
  int iter = 0;
  for (; iter < max_iterations; ++iter) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int p, int q) { return value[static_cast<std::size_t>(p)] < value[static_cast<std::size_t>(q)]; });
    const int best = order.front();
    const int worst = order.back();
    const int second_worst = order[static_cast<std::size_t>(n - 1)];
    record_best(best);

    const double spread = value[static_cast<std::size_t>(worst)] - value[static_cast<std::size_t>(best)];
    if (std::isfinite(value[static_cast<std::size_t>(worst)]) &&
        spread <= tolerance * (std::abs(value[static_cast<std::size_t>(best)]) + tolerance)) {
      result.converged = true;
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i <= n; ++i)
      if (i != worst) centroid += vertex[static_cast<std::size_t>(i)];
    centroid /= static_cast<double>(n);

    const Eigen::VectorXd reflected = centroid + (centroid - vertex[static_cast<std::size_t>(worst)]);
    const double fr = guarded(f, reflected);
    if (fr < value[static_cast<std::size_t>(best)]) {
      const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - vertex[static_cast<std::size_t>(worst)]);
      const double fe = guarded(f, expanded);
      if (fe < fr) {
        vertex[static_cast<std::size_t>(worst)] = expanded;
        value[static_cast<std::size_t>(worst)] = fe;
      } else {
        vertex[static_cast<std::size_t>(worst)] = reflected;
        value[static_cast<std::size_t>(worst)] = fr;
      }
      continue;
    }
    if (fr < value[static_cast<std::size_t>(second_worst)]) {
      vertex[static_cast<std::size_t>(worst)] = reflected;
      value[static_cast<std::size_t>(worst)] = fr;
      continue;
    }
    const Eigen::VectorXd contracted = centroid + 0.5 * (vertex[static_cast<std::size_t>(worst)] - centroid);
    const double fc = guarded(f, contracted);
    if (fc < value[static_cast<std::size_t>(worst)]) {
      vertex[static_cast<std::size_t>(worst)] = contracted;
      value[static_cast<std::size_t>(worst)] = fc;
      continue;
    }
    for (int i = 0; i <= n; ++i) {
      if (i == best) continue;
      vertex[static_cast<std::size_t>(i)] =
          vertex[static_cast<std::size_t>(best)] +
          0.5 * (vertex[static_cast<std::size_t>(i)] - vertex[static_cast<std::size_t>(best)]);
      value[static_cast<std::size_t>(i)] = guarded(f, vertex[static_cast<std::size_t>(i)]);
    }
  }

  const auto best_it = std::min_element(value.begin(), value.end());
  const auto best_idx = static_cast<std::size_t>(std::distance(value.begin(), best_it));
  result.x = vertex[best_idx];
  result.value = *best_it;
  result.iterations = iter;
  if (result.trace.empty() || result.value < result.trace.back().value)
    result.trace.push_back({result.x, result.value});
  return result;
}

namespace {

Eigen::MatrixXd numeric_jacobian(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& residuals,
    const Eigen::VectorXd& p, const Eigen::VectorXd& r0) {
  const int n = static_cast<int>(p.size());
  const int m = static_cast<int>(r0.size());
  Eigen::MatrixXd J(m, n);
  for (int j = 0; j < n; ++j) {
    const double h = 1e-7 * std::max(1.0, std::abs(p(j)));
    Eigen::VectorXd plus = p, minus = p;
    plus(j) += h;
    minus(j) -= h;
    J.col(j) = (residuals(plus) - residuals(minus)) / (2.0 * h);
  }
  return J;
}

}  // namespace

LeastSquaresResult levenberg_marquardt(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& residuals,
    const Eigen::VectorXd& initial, int max_iterations, double ftol, double xtol) {
  const int n = static_cast<int>(initial.size());
  if (n < 1) throw std::invalid_argument("levenberg_marquardt: empty parameter vector");

  LeastSquaresResult result;
  Eigen::VectorXd p = initial;
  Eigen::VectorXd r = residuals(p);
  const int m = static_cast<int>(r.size());
  if (m < n)
    throw std::invalid_argument("levenberg_marquardt: fewer residuals than parameters");
  double rss = r.squaredNorm();
  if (!std::isfinite(rss))
    throw std::invalid_argument("levenberg_marquardt: non-finite residuals at start");

  double lambda = 1e-3;
  int iter = 0;
  for (; iter < max_iterations; ++iter) {
    const Eigen::MatrixXd J = numeric_jacobian(residuals, p, r);
    const Eigen::MatrixXd JtJ = J.transpose() * J;
    const Eigen::VectorXd g = J.transpose() * r;

    bool stepped = false;
    for (int attempt = 0; attempt < 30; ++attempt) {
      Eigen::MatrixXd A = JtJ;
      A.diagonal() += lambda * JtJ.diagonal().cwiseMax(1e-12);
      const Eigen::VectorXd delta = A.ldlt().solve(-g);
      const Eigen::VectorXd candidate = p + delta;
      const Eigen::VectorXd rc = residuals(candidate);
      const double rss_c = rc.squaredNorm();
      if (std::isfinite(rss_c) && rss_c < rss) {
        const bool small_step = delta.norm() <= xtol * (p.norm() + xtol);
        const bool small_gain = (rss - rss_c) <= ftol * rss;
        p = candidate;
        r = rc;
        rss = rss_c;
        lambda = std::max(lambda * 0.3, 1e-12);
        stepped = true;
        if (small_step || small_gain) result.converged = true;
        break;
      }
      lambda *= 10.0;
      if (lambda > 1e12) break;
    }
    if (!stepped || result.converged) break;
  }

  result.params = p;
  result.rss = rss;
  result.iterations = iter;
  // stalled with a tiny gradient still counts as converged
  if (!result.converged) {
    const Eigen::MatrixXd J = numeric_jacobian(residuals, p, r);
    result.converged = (J.transpose() * r).norm() <= 1e-10 * std::max(1.0, rss);
  }

  const Eigen::MatrixXd J = numeric_jacobian(residuals, p, r);
  const Eigen::MatrixXd JtJ = J.transpose() * J;
  if (m > n) {
    const double sigma2 = rss / static_cast<double>(m - n);
    result.covariance = sigma2 * JtJ.completeOrthogonalDecomposition().pseudoInverse();
  } else {
    result.covariance = Eigen::MatrixXd::Zero(n, n);
  }
  return result;
}

}  // namespace floq
