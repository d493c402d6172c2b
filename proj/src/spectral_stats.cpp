#include "floq/spectral_stats.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "floq/errors.hpp"
#include "floq/floquet.hpp"
#include "floq/parallel.hpp"
#include "floq/rng.hpp"

namespace floq {

GapRatioSet gap_ratios(const Eigen::Ref<const Eigen::VectorXd>& phases) {
  const int n = static_cast<int>(phases.size());
  if (n < 3) throw std::invalid_argument("gap_ratios: need at least 3 phases");
  constexpr double pi = std::numbers::pi;
  for (int k = 0; k < n; ++k) {
    if (!(phases(k) > -pi && phases(k) <= pi))
      throw std::invalid_argument("gap_ratios: phases must lie in (-pi, pi]");
    if (k > 0 && phases(k) < phases(k - 1))
      throw std::invalid_argument("gap_ratios: phases must be sorted ascending");
  }

  Eigen::VectorXd gaps(n);
  for (int k = 0; k + 1 < n; ++k) gaps(k) = phases(k + 1) - phases(k);
  gaps(n - 1) = 2.0 * pi - (phases(n - 1) - phases(0));

  GapRatioSet set;
  set.dim = n;
  set.r_values.reserve(static_cast<std::size_t>(n));
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double g1 = gaps(k);
    const double g2 = gaps((k + 1) % n);
    if (g1 < kDegenerateGap || g2 < kDegenerateGap) {
      ++set.excluded;
      continue;
    }
    const double r = g1 < g2 ? g1 / g2 : g2 / g1;
    set.r_values.push_back(r);
    sum += r;
  }
  if (set.r_values.empty())
    throw NumericalError("gap_ratios: all ratios excluded as degenerate");
  set.mean_r = sum / static_cast<double>(set.r_values.size());
  return set;
}

EnsembleMeanR mean_r_over_ensemble(const ChainConfig& config, int samples,
                                   std::uint64_t master_seed, int workers) {
  if (samples < 2)
    throw std::invalid_argument("mean_r_over_ensemble: need at least 2 samples");
  const FloquetContext ctx = make_floquet_context(config);

  std::vector<std::optional<double>> per_sample(static_cast<std::size_t>(samples));
  std::vector<std::string> failures;
  std::mutex failures_mutex;
  parallel_for_index(samples, workers, [&](int s) {
    try {
      SplitMix64 stream(derive_seed(master_seed, 0, static_cast<std::uint64_t>(s)));
      KickAngles kick = sample_kick_angles(config.theta, config.L, stream);
      kick.master_seed = master_seed;
      kick.sample_index = static_cast<std::uint64_t>(s);
      const Eigen::MatrixXcd U = floquet_from_context(ctx, kick);
      per_sample[static_cast<std::size_t>(s)] = gap_ratios(floquet_phases(U)).mean_r;
    } catch (const NumericalError& e) {
      std::scoped_lock lock(failures_mutex);
      failures.emplace_back(e.what());
    }
  });

  const int failed = samples - static_cast<int>(std::count_if(
                                   per_sample.begin(), per_sample.end(),
                                   [](const auto& v) { return v.has_value(); }));
  if (failed > samples / 100)
    throw NumericalError("mean_r_over_ensemble: " + std::to_string(failed) + "/" +
                         std::to_string(samples) + " samples failed (first: " +
                         (failures.empty() ? std::string("?") : failures.front()) + ")");

  RunningStats stats;
  for (const auto& v : per_sample)
    if (v) stats.add(*v);
  return {stats.mean, stats.std_error(), static_cast<int>(stats.count), failed};
}

}  // namespace floq
