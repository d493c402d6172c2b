#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace floq {

struct ProbePoint {
  Eigen::VectorXd x;
  double value = 0.0;
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<ProbePoint> trace;  // best-so-far improvements
};

// Derivative-free simplex minimization. `step` sets the initial simplex edge
// per coordinate. The objective may return +inf (e.g. box penalties).
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0, const Eigen::VectorXd& step,
                             int max_iterations = 400, double tolerance = 1e-8);

struct LeastSquaresResult {
  Eigen::VectorXd params;
  double rss = 0.0;  // sum of squared residuals
  Eigen::MatrixXd covariance;
  int iterations = 0;
  bool converged = false;
};

// Levenberg-Marquardt with a central-difference Jacobian. `residuals` maps
// parameters to the residual vector; non-finite residuals are treated as a
// rejected step. Covariance is rss/(m-n) * (J^T J)^-1 at the solution.
LeastSquaresResult levenberg_marquardt(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& residuals,
    const Eigen::VectorXd& initial, int max_iterations = 200, double ftol = 1e-12,
    double xtol = 1e-12);

}  // namespace floq
