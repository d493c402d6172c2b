#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "floq/errors.hpp"
#include "floq/optimize.hpp"

namespace floq {

// One system size worth of <r>(tau) data.
struct SizeSeries {
  int L = 0;
  Eigen::ArrayXd tau;    // ascending
  Eigen::ArrayXd value;  // <r> per tau
  Eigen::ArrayXd error;  // standard errors, all > 0
};

struct ScalingDataset {
  std::vector<SizeSeries> sizes;
};

// >= 3 distinct sizes, >= 5 tau points each, ascending tau, positive errors.
void validate_dataset(const ScalingDataset& data);

// Data-collapse objective: scale every point to x = (tau - tau_c) L^(1/nu),
// estimate the master curve at x by error-weighted linear regression through
// the bracketing points of the *other* sizes, and average the squared
// deviations in units of the combined errors. ~1 for a perfect collapse with
// honest error bars. Throws NumericalError when no point lies in the overlap
// of two sizes after scaling.
double collapse_quality(const ScalingDataset& data, double tau_c, double nu);

struct SearchBox {
  double tau_min = 0.0, tau_max = 1.0;
  double nu_min = 0.1, nu_max = 3.0;
};

struct CollapseResult {
  double tau_c = 0.0;
  double nu = 0.0;
  double quality = 0.0;
  bool boundary = false;  // optimum within 1% of a search-box edge
  int grid_evaluations = 0;
  std::vector<ProbePoint> trace;  // x = (tau_c, nu); grid best, then simplex improvements
};

// Coarse grid scan (grid_points^2 cells, >= 21 enforced) followed by
// Nelder-Mead refinement from the best cell; the refined minimum never
// exceeds any probed grid value.
CollapseResult fit_collapse(const ScalingDataset& data, const SearchBox& box,
                            int grid_points = 21);

// Ensemble-averaged observable on a log-sampled kick-count grid.
struct TimeSeries {
  std::vector<std::int64_t> times;
  Eigen::ArrayXd value;
  Eigen::ArrayXd error;  // empty when unknown
};

struct Window {
  std::int64_t t_min = 0;
  std::int64_t t_max = 0;
};

// Default growth-fit window [10, t*]: t* is the earliest time reaching 95%
// of the late-time plateau (mean over the last time decade), extended
// forward if fewer than 10 points survive.
Window default_fit_window(const TimeSeries& series);

struct GrowthFit {
  double c = 0.0;      // amplitude of (ln t)^gamma
  double gamma = 0.0;  // growth exponent
  double d = 0.0;      // subleading (ln t)^(gamma-1) amplitude
  double gamma_stderr = 0.0;
  double residual = 0.0;  // mean squared log-residual over the window
  double mse = 0.0;       // mean squared residual on the raw values
  Window window;
  bool with_subleading = true;
  bool converged = false;
};

// Carries the linearized initial fit when the nonlinear refinement fails.
struct FitError : NumericalError {
  explicit FitError(const std::string& msg,
                    std::optional<GrowthFit> initializer = std::nullopt)
      : NumericalError(msg), initializer_fit(std::move(initializer)) {}
  std::optional<GrowthFit> initializer_fit;
};

// S(t) = c (ln t)^gamma [+ d (ln t)^(gamma-1)] by least squares on S.
// The initial guess regresses ln S against ln ln t (exact when d = 0).
// Requires >= 10 window points, all t >= 2; rejects fits with gamma <= 0.
GrowthFit fit_log_power(const TimeSeries& series, Window window,
                        bool with_subleading = true);

struct AlgebraicFit {
  double c = 0.0;
  double gamma = 0.0;
  double gamma_stderr = 0.0;
  double mse = 0.0;
  Window window;
  bool converged = false;
};

// S(t) = c t^gamma by least squares on S.
AlgebraicFit fit_power_law(const TimeSeries& series, Window window);

// Mean squared deviation of a fitted model on the window points; both
// candidates in compare_growth_models go through this one evaluator.
double mean_squared_error(const TimeSeries& series, Window window,
                          const std::function<double(std::int64_t)>& model);

enum class PreferredModel { kLogPower, kAlgebraic, kInconclusive };

struct ModelComparison {
  GrowthFit log_power;
  AlgebraicFit algebraic;
  double mse_log_power = 0.0;
  double mse_algebraic = 0.0;
  double ratio = 0.0;  // worse mse / better mse
  PreferredModel preferred = PreferredModel::kInconclusive;
  Window window;
};

// Fits both growth laws on the same window and prefers the smaller-residual
// model when the residual ratio exceeds 1.5 (inconclusive otherwise).
ModelComparison compare_growth_models(const TimeSeries& series, Window window);

}  // namespace floq
