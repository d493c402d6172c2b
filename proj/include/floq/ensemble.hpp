#pragma once

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "floq/config.hpp"
#include "floq/dynamics.hpp"
#include "floq/errors.hpp"
#include "floq/floquet.hpp"
#include "floq/parallel.hpp"
#include "floq/rng.hpp"
#include "floq/spectral_stats.hpp"

namespace floq {

// Sweep axes over the chain parameters. A disengaged axis keeps the base
// value; an engaged-but-empty list is an error.
struct SweepAxes {
  std::optional<std::vector<int>> L;
  std::optional<std::vector<double>> a;
  std::optional<std::vector<double>> b;
  std::optional<std::vector<double>> theta;
  std::optional<std::vector<double>> tau;
};

struct SweepPlan {
  ChainConfig base;
  SweepAxes axes;
  int samples = 1;
  std::uint64_t master_seed = 0;
  bool couple_ab = false;  // uniform couplings: b follows the a axis
};

struct GridPoint {
  std::size_t index = 0;
  ChainConfig config;
};

// Cartesian product of the engaged axes, loop order (L, a, b, theta, tau)
// with tau innermost. Deterministic for a given plan.
std::vector<GridPoint> grid_points(const SweepPlan& plan);

struct Job {
  GridPoint point;
  int sample_index = 0;
  std::uint64_t seed = 0;  // derive_seed(master, grid index, sample index)
};

// Grid points x sample indices with derived per-job seeds; seeds are
// checked for collisions across the whole list.
std::vector<Job> plan_sweep(const SweepPlan& plan);

struct AggregateRecord {
  std::size_t grid_index = 0;
  ChainConfig config;
  std::string observable;
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(count)
  int samples = 0;
  int excluded = 0;  // failed samples at this grid point
};

std::string describe(const ChainConfig& config);

// Checkpoint file: one JSON line per completed grid point, full precision.
std::optional<std::vector<AggregateRecord>> checkpoint_lookup(
    const std::filesystem::path& file, std::size_t grid_index, const ChainConfig& config);
void checkpoint_append(const std::filesystem::path& file, std::size_t grid_index,
                       const ChainConfig& config,
                       const std::vector<AggregateRecord>& records);

// Per-sample mean gap ratio of the kicked-chain quasi-energy spectrum.
struct LevelStatsObservable {
  using Context = FloquetContext;
  std::vector<std::string> names() const { return {"mean_r"}; }
  Context prepare(const ChainConfig& config) const { return make_floquet_context(config); }
  std::vector<double> evaluate(const Context& ctx, const Job& job) const;
};

// Entanglement entropy and imbalance of the kicked Neel state on a log
// time grid; one full Floquet diagonalization per sample.
struct DynamicsObservable {
  TimeGrid grid;

  using Context = FloquetContext;
  std::vector<std::string> names() const;
  Context prepare(const ChainConfig& config) const { return make_floquet_context(config); }
  std::vector<double> evaluate(const Context& ctx, const Job& job) const;
};

// Executes all jobs with at most `workers` concurrent, aggregating each grid
// point in sample-index order with a streaming combiner, so outputs are
// identical for every worker count. Grid points found in the checkpoint are
// loaded instead of recomputed; each completed point is appended to it.
// Throws NumericalError if more than 1% of samples fail at any grid point.
template <class Observable>
std::vector<AggregateRecord> run_sweep(
    const SweepPlan& plan, int workers, const Observable& observable,
    const std::optional<std::filesystem::path>& checkpoint = std::nullopt) {
  if (workers < 1) throw std::invalid_argument("run_sweep: workers must be >= 1");
  if (plan.samples < 1) throw std::invalid_argument("run_sweep: samples must be >= 1");
  const std::vector<GridPoint> points = grid_points(plan);
  const std::vector<std::string> names = observable.names();

  std::vector<AggregateRecord> records;
  records.reserve(points.size() * names.size());
  for (const GridPoint& point : points) {
    if (checkpoint) {
      if (auto cached = checkpoint_lookup(*checkpoint, point.index, point.config)) {
        for (auto& r : *cached) records.push_back(std::move(r));
        continue;
      }
    }

    const typename Observable::Context ctx = observable.prepare(point.config);
    std::vector<std::optional<std::vector<double>>> slots(
        static_cast<std::size_t>(plan.samples));
    std::string first_failure;
    std::mutex failure_mutex;
    parallel_for_index(plan.samples, workers, [&](int s) {
      Job job{point, s, derive_seed(plan.master_seed, point.index,
                                    static_cast<std::uint64_t>(s))};
      try {
        slots[static_cast<std::size_t>(s)] = observable.evaluate(ctx, job);
      } catch (const NumericalError& e) {
        std::scoped_lock lock(failure_mutex);
        if (first_failure.empty()) first_failure = e.what();
      }
    });

    int failed = 0;
    for (const auto& slot : slots)
      if (!slot) ++failed;
    if (failed > plan.samples / 100)
      throw NumericalError("run_sweep: " + std::to_string(failed) + "/" +
                           std::to_string(plan.samples) + " samples failed at " +
                           describe(point.config) + " (first: " + first_failure + ")");

    std::vector<AggregateRecord> point_records;
    for (std::size_t j = 0; j < names.size(); ++j) {
      RunningStats stats;
      for (const auto& slot : slots)
        if (slot) stats.add((*slot)[j]);
      point_records.push_back({point.index, point.config, names[j], stats.mean,
                               stats.std_error(), static_cast<int>(stats.count), failed});
    }
    if (checkpoint) checkpoint_append(*checkpoint, point.index, point.config, point_records);
    for (auto& r : point_records) records.push_back(std::move(r));
  }
  return records;
}

}  // namespace floq
