#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "floq/config.hpp"

namespace floq {

// Gaps this small are eigensolver noise, not physics; the ratios they touch
// would pile up spurious r = 0 entries, so they are excluded and counted.
inline constexpr double kDegenerateGap = 1e-12;

// Consecutive-gap ratios of one quasi-energy spectrum.
struct GapRatioSet {
  std::vector<double> r_values;  // each in [0, 1]; dim entries unless excluded
  double mean_r = 0.0;
  int dim = 0;       // spectrum size
  int excluded = 0;  // ratios dropped because a participating gap < kDegenerateGap
};

// Circular gap convention: the dim gaps include the wrap-around gap
// 2*pi - (phi_max - phi_min), and ratios r_k = min/max of circularly
// adjacent gap pairs, so a global phase shift leaves the set unchanged.
// Requires phases sorted ascending in (-pi, pi], at least 3 of them.
GapRatioSet gap_ratios(const Eigen::Ref<const Eigen::VectorXd>& phases);

// Numerically stable streaming mean/variance (Welford), with an associative
// merge so parallel schedules reduce to the same result in a fixed order.
struct RunningStats {
  long long count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double d = x - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (x - mean);
  }
  void merge(const RunningStats& other) {
    if (other.count == 0) return;
    if (count == 0) {
      *this = other;
      return;
    }
    const double d = other.mean - mean;
    const double total = static_cast<double>(count + other.count);
    mean += d * static_cast<double>(other.count) / total;
    m2 += other.m2 + d * d * static_cast<double>(count) *
                         static_cast<double>(other.count) / total;
    count += other.count;
  }
  double variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
  double std_error() const {
    return count > 1 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
  }
};

struct EnsembleMeanR {
  double mean = 0.0;
  double std_error = 0.0;
  int samples = 0;
  int excluded = 0;  // failed samples
};

// Disorder-averaged mean gap ratio at one parameter point: per-sample mean_r
// averaged over `samples` quenched kicks with seeds derived from
// (master_seed, grid_index=0, sample). Aggregation runs in sample order, so
// the result is identical for any worker count. Aborts with NumericalError
// if more than 1% of samples fail.
EnsembleMeanR mean_r_over_ensemble(const ChainConfig& config, int samples,
                                   std::uint64_t master_seed, int workers = 1);

}  // namespace floq
