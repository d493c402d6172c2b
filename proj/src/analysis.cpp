#include "floq/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace floq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

void validate_dataset(const ScalingDataset& data) {
  if (data.sizes.size() < 3)
    throw std::invalid_argument("scaling dataset: need at least 3 system sizes");
  std::set<int> seen;
  for (const auto& s : data.sizes) {
    if (s.L < 2) throw std::invalid_argument("scaling dataset: L must be >= 2");
    if (!seen.insert(s.L).second)
      throw std::invalid_argument("scaling dataset: duplicate size L=" + std::to_string(s.L));
    const auto n = s.tau.size();
    if (n < 5)
      throw std::invalid_argument("scaling dataset: need >= 5 tau points per size, L=" +
                                  std::to_string(s.L) + " has " + std::to_string(n));
    if (s.value.size() != n || s.error.size() != n)
      throw std::invalid_argument("scaling dataset: ragged arrays at L=" + std::to_string(s.L));
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!(s.error(i) > 0.0))
        throw std::invalid_argument("scaling dataset: errors must be > 0 at L=" +
                                    std::to_string(s.L));
      if (i > 0 && !(s.tau(i) > s.tau(i - 1)))
        throw std::invalid_argument("scaling dataset: tau must be strictly ascending at L=" +
                                    std::to_string(s.L));
    }
  }
}

double collapse_quality(const ScalingDataset& data, double tau_c, double nu) {
  validate_dataset(data);
  if (!std::isfinite(tau_c)) throw std::invalid_argument("collapse_quality: tau_c not finite");
  if (!(nu > 0.0) || !std::isfinite(nu))
    throw std::invalid_argument("collapse_quality: nu must be finite and > 0");

  const std::size_t n_sizes = data.sizes.size();
  std::vector<Eigen::ArrayXd> x(n_sizes);
  for (std::size_t s = 0; s < n_sizes; ++s) {
    const double scale = std::pow(static_cast<double>(data.sizes[s].L), 1.0 / nu);
    x[s] = (data.sizes[s].tau - tau_c) * scale;
  }

  double sum = 0.0;
  long contributing = 0;
  for (std::size_t s = 0; s < n_sizes; ++s) {
    const auto& series = data.sizes[s];
    for (Eigen::Index p = 0; p < x[s].size(); ++p) {
      const double xp = x[s](p);

      // error-weighted linear regression through the bracketing points of
      // every other size whose scaled range contains xp
      double K = 0.0, Kx = 0.0, Ky = 0.0, Kxx = 0.0, Kxy = 0.0;
      int neighbors = 0;
      for (std::size_t o = 0; o < n_sizes; ++o) {
        if (o == s) continue;
        const auto& ox = x[o];
        const Eigen::Index m = ox.size();
        if (xp < ox(0) || xp > ox(m - 1)) continue;
        Eigen::Index j = 0;
        while (j + 1 < m && ox(j + 1) <= xp) ++j;
        if (j == m - 1) --j;  // xp equals the right endpoint
        for (Eigen::Index q : {j, j + 1}) {
          const double w = 1.0 / (data.sizes[o].error(q) * data.sizes[o].error(q));
          const double xq = ox(q);
          const double yq = data.sizes[o].value(q);
          K += w;
          Kx += w * xq;
          Ky += w * yq;
          Kxx += w * xq * xq;
          Kxy += w * xq * yq;
          ++neighbors;
        }
      }
      if (neighbors < 2) continue;
      const double delta = K * Kxx - Kx * Kx;
      if (!(delta > 1e-300)) continue;  // all neighbors at one x
      const double slope = (K * Kxy - Kx * Ky) / delta;
      const double intercept = (Kxx * Ky - Kx * Kxy) / delta;
      const double estimate = slope * xp + intercept;
      const double est_var = (Kxx - 2.0 * xp * Kx + xp * xp * K) / delta;
      const double dev = series.value(p) - estimate;
      sum += dev * dev / (series.error(p) * series.error(p) + est_var);
      ++contributing;
    }
  }
  if (contributing == 0)
    throw NumericalError("collapse_quality: sizes do not overlap after scaling");
  return sum / static_cast<double>(contributing);
}

CollapseResult fit_collapse(const ScalingDataset& data, const SearchBox& box,
                            int grid_points) {
  validate_dataset(data);
  if (!(box.tau_min < box.tau_max) || !(box.nu_min < box.nu_max) || !(box.nu_min > 0.0))
    throw std::invalid_argument("fit_collapse: empty or invalid search box");
  const int g = std::max(grid_points, 21);

  auto objective = [&](double tc, double nu) -> double {
    try {
      return collapse_quality(data, tc, nu);
    } catch (const NumericalError&) {
      return kInf;  // no overlap at this scaling
    }
  };

  CollapseResult result;
  double best_tc = box.tau_min, best_nu = box.nu_min, best_q = kInf;
  for (int i = 0; i < g; ++i) {
    const double tc = box.tau_min + (box.tau_max - box.tau_min) * i / (g - 1);
    for (int j = 0; j < g; ++j) {
      const double nu = box.nu_min + (box.nu_max - box.nu_min) * j / (g - 1);
      const double q = objective(tc, nu);
      if (q < best_q) {
        best_q = q;
        best_tc = tc;
        best_nu = nu;
      }
    }
  }
  result.grid_evaluations = g * g;
  if (!std::isfinite(best_q))
    throw NumericalError("fit_collapse: collapse objective undefined on entire search box");
  result.trace.push_back({Eigen::Vector2d(best_tc, best_nu), best_q});

  auto boxed = [&](const Eigen::VectorXd& p) -> double {
    if (p(0) < box.tau_min || p(0) > box.tau_max || p(1) < box.nu_min || p(1) > box.nu_max)
      return kInf;
    return objective(p(0), p(1));
  };
  Eigen::Vector2d step(0.5 * (box.tau_max - box.tau_min) / (g - 1),
                       0.5 * (box.nu_max - box.nu_min) / (g - 1));
  const NelderMeadResult nm =
      nelder_mead(boxed, Eigen::Vector2d(best_tc, best_nu), step, 300, 1e-9);

  if (nm.value <= best_q) {
    result.tau_c = nm.x(0);
    result.nu = nm.x(1);
    result.quality = nm.value;
  } else {
    result.tau_c = best_tc;
    result.nu = best_nu;
    result.quality = best_q;
  }
  for (const auto& pt : nm.trace)
    if (pt.value < result.trace.back().value) result.trace.push_back(pt);

  const double tau_margin = 0.01 * (box.tau_max - box.tau_min);
  const double nu_margin = 0.01 * (box.nu_max - box.nu_min);
  result.boundary = result.tau_c < box.tau_min + tau_margin ||
                    result.tau_c > box.tau_max - tau_margin ||
                    result.nu < box.nu_min + nu_margin ||
                    result.nu > box.nu_max - nu_margin;
  return result;
}

namespace {

struct WindowPoints {
  std::vector<double> t;  // as double, >= 2
  std::vector<double> s;
};

WindowPoints window_points(const TimeSeries& series, Window window) {
  if (series.times.size() != static_cast<std::size_t>(series.value.size()))
    throw std::invalid_argument("time series: ragged arrays");
  WindowPoints pts;
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    const std::int64_t t = series.times[i];
    if (t < window.t_min || t > window.t_max) continue;
    if (t < 2)
      throw std::invalid_argument("growth fit: window must start at t >= 2");
    pts.t.push_back(static_cast<double>(t));
    pts.s.push_back(series.value(static_cast<Eigen::Index>(i)));
  }
  if (pts.t.size() < 10)
    throw std::invalid_argument("growth fit: fewer than 10 points in window [" +
                                std::to_string(window.t_min) + ", " +
                                std::to_string(window.t_max) + "]");
  return pts;
}

// unweighted OLS of y against x
std::pair<double, double> linear_fit(const std::vector<double>& xs,
                                     const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double delta = n * sxx - sx * sx;
  const double slope = (n * sxy - sx * sy) / delta;
  return {slope, (sy - slope * sx) / n};
}

double mean_squared_log_residual(const WindowPoints& pts,
                                 const std::function<double(double)>& model) {
  double sum = 0.0;
  long n = 0;
  for (std::size_t i = 0; i < pts.t.size(); ++i) {
    const double m = model(pts.t[i]);
    if (!(m > 0.0) || !(pts.s[i] > 0.0)) continue;
    const double d = std::log(pts.s[i]) - std::log(m);
    sum += d * d;
    ++n;
  }
  return n > 0 ? sum / static_cast<double>(n) : kInf;
}

}  // namespace

Window default_fit_window(const TimeSeries& series) {
  if (series.times.size() < 2)
    throw std::invalid_argument("default_fit_window: series too short");
  const std::int64_t t_max = series.times.back();
  const std::int64_t decade = std::max<std::int64_t>(t_max / 10, 1);

  double plateau = 0.0;
  long n = 0;
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    if (series.times[i] >= decade) {
      plateau += series.value(static_cast<Eigen::Index>(i));
      ++n;
    }
  }
  plateau /= static_cast<double>(std::max(n, 1L));

  std::int64_t t_star = t_max;
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    if (series.value(static_cast<Eigen::Index>(i)) >= 0.95 * plateau) {
      t_star = series.times[i];
      break;
    }
  }
  Window window{10, t_star};
  auto in_window = [&](const Window& w) {
    long count = 0;
    for (const auto t : series.times)
      if (t >= w.t_min && t <= w.t_max) ++count;
    return count;
  };
  // grow the window forward until it holds enough points
  for (std::size_t i = 0; in_window(window) < 10 && i < series.times.size(); ++i)
    if (series.times[i] > window.t_max) window.t_max = series.times[i];
  return window;
}

GrowthFit fit_log_power(const TimeSeries& series, Window window, bool with_subleading) {
  const WindowPoints pts = window_points(series, window);
  const auto [min_it, max_it] = std::minmax_element(pts.s.begin(), pts.s.end());
  if (*max_it - *min_it <= 1e-12 * std::max(1.0, std::abs(*max_it)))
    throw FitError("fit_log_power: series is constant over the window");

  // ln S = ln c + gamma * ln ln t when d = 0
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < pts.t.size(); ++i) {
    if (pts.s[i] > 0.0) {
      lx.push_back(std::log(std::log(pts.t[i])));
      ly.push_back(std::log(pts.s[i]));
    }
  }
  if (lx.size() < 3) throw FitError("fit_log_power: too few positive values to initialize");
  auto [gamma0, log_c0] = linear_fit(lx, ly);
  gamma0 = std::clamp(gamma0, -50.0, 50.0);
  const double c0 = std::exp(std::clamp(log_c0, -200.0, 200.0));

  auto make_fit = [&](double c, double gamma, double d, double gamma_stderr, double rss,
                      bool converged) {
    GrowthFit fit;
    fit.c = c;
    fit.gamma = gamma;
    fit.d = d;
    fit.gamma_stderr = gamma_stderr;
    fit.mse = rss / static_cast<double>(pts.t.size());
    fit.window = window;
    fit.with_subleading = with_subleading;
    fit.converged = converged;
    fit.residual = mean_squared_log_residual(pts, [&](double t) {
      const double l = std::log(t);
      return c * std::pow(l, gamma) + (with_subleading ? d * std::pow(l, gamma - 1.0) : 0.0);
    });
    return fit;
  };

  auto initializer = [&] {
    double rss0 = 0.0;
    for (std::size_t i = 0; i < pts.t.size(); ++i) {
      const double m = c0 * std::pow(std::log(pts.t[i]), gamma0);
      rss0 += (m - pts.s[i]) * (m - pts.s[i]);
    }
    return make_fit(c0, gamma0, 0.0, 0.0, rss0, false);
  };

  const int n_params = with_subleading ? 3 : 2;
  auto residuals = [&](const Eigen::VectorXd& p) {
    Eigen::VectorXd r(static_cast<Eigen::Index>(pts.t.size()));
    for (std::size_t i = 0; i < pts.t.size(); ++i) {
      const double l = std::log(pts.t[i]);
      double m = p(0) * std::pow(l, p(1));
      if (with_subleading) m += p(2) * std::pow(l, p(1) - 1.0);
      r(static_cast<Eigen::Index>(i)) = m - pts.s[i];
    }
    return r;
  };
  Eigen::VectorXd p0(n_params);
  p0(0) = c0;
  p0(1) = gamma0;
  if (with_subleading) p0(2) = 0.0;

  LeastSquaresResult lm;
  try {
    lm = levenberg_marquardt(residuals, p0);
  } catch (const std::exception& e) {
    throw FitError(std::string("fit_log_power: ") + e.what(), initializer());
  }
  if (!lm.converged)
    throw FitError("fit_log_power: no convergence within iteration budget", initializer());
  const double gamma = lm.params(1);
  if (!(gamma > 0.0))
    throw FitError("fit_log_power: fitted gamma = " + std::to_string(gamma) +
                       " is not positive",
                   initializer());
  return make_fit(lm.params(0), gamma, with_subleading ? lm.params(2) : 0.0,
                  std::sqrt(std::max(lm.covariance(1, 1), 0.0)), lm.rss, true);
}

AlgebraicFit fit_power_law(const TimeSeries& series, Window window) {
  const WindowPoints pts = window_points(series, window);

  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < pts.t.size(); ++i) {
    if (pts.s[i] > 0.0) {
      lx.push_back(std::log(pts.t[i]));
      ly.push_back(std::log(pts.s[i]));
    }
  }
  if (lx.size() < 3) throw FitError("fit_power_law: too few positive values to initialize");
  auto [gamma0, log_c0] = linear_fit(lx, ly);
  gamma0 = std::clamp(gamma0, -50.0, 50.0);
  const double c0 = std::exp(std::clamp(log_c0, -200.0, 200.0));

  auto residuals = [&](const Eigen::VectorXd& p) {
    Eigen::VectorXd r(static_cast<Eigen::Index>(pts.t.size()));
    for (std::size_t i = 0; i < pts.t.size(); ++i)
      r(static_cast<Eigen::Index>(i)) = p(0) * std::pow(pts.t[i], p(1)) - pts.s[i];
    return r;
  };
  Eigen::Vector2d p0(c0, gamma0);

  LeastSquaresResult lm;
  try {
    lm = levenberg_marquardt(residuals, p0);
  } catch (const std::exception& e) {
    throw FitError(std::string("fit_power_law: ") + e.what());
  }
  if (!lm.converged)
    throw FitError("fit_power_law: no convergence within iteration budget");

  AlgebraicFit fit;
  fit.c = lm.params(0);
  fit.gamma = lm.params(1);
  fit.gamma_stderr = std::sqrt(std::max(lm.covariance(1, 1), 0.0));
  fit.mse = lm.rss / static_cast<double>(pts.t.size());
  fit.window = window;
  fit.converged = true;
  return fit;
}

double mean_squared_error(const TimeSeries& series, Window window,
                          const std::function<double(std::int64_t)>& model) {
  const WindowPoints pts = window_points(series, window);
  double sum = 0.0;
  for (std::size_t i = 0; i < pts.t.size(); ++i) {
    const double d = model(static_cast<std::int64_t>(pts.t[i])) - pts.s[i];
    sum += d * d;
  }
  return sum / static_cast<double>(pts.t.size());
}

ModelComparison compare_growth_models(const TimeSeries& series, Window window) {
  ModelComparison cmp;
  cmp.window = window;
  cmp.log_power = fit_log_power(series, window, true);
  cmp.algebraic = fit_power_law(series, window);

  const GrowthFit& lf = cmp.log_power;
  cmp.mse_log_power = mean_squared_error(series, window, [&](std::int64_t t) {
    const double l = std::log(static_cast<double>(t));
    return lf.c * std::pow(l, lf.gamma) + lf.d * std::pow(l, lf.gamma - 1.0);
  });
  const AlgebraicFit& af = cmp.algebraic;
  cmp.mse_algebraic = mean_squared_error(series, window, [&](std::int64_t t) {
    return af.c * std::pow(static_cast<double>(t), af.gamma);
  });

  const double lo = std::min(cmp.mse_log_power, cmp.mse_algebraic);
  const double hi = std::max(cmp.mse_log_power, cmp.mse_algebraic);
  cmp.ratio = lo > 0.0 ? hi / lo : kInf;
  if (cmp.ratio > 1.5)
    cmp.preferred = cmp.mse_log_power < cmp.mse_algebraic ? PreferredModel::kLogPower
                                                          : PreferredModel::kAlgebraic;
  else
    cmp.preferred = PreferredModel::kInconclusive;
  return cmp;
}

}  // namespace floq
