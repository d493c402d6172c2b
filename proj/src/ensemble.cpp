#include "floq/ensemble.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "floq/io.hpp"

#include "json.hpp"

namespace floq {

namespace {

// every engaged axis must be a nonempty list
template <class T>
const std::vector<T>& axis_or_base(const std::optional<std::vector<T>>& axis,
                                   const std::vector<T>& base, const char* name) {
  if (!axis) return base;
  if (axis->empty())
    throw std::invalid_argument(std::string("sweep: empty axis '") + name + "'");
  return *axis;
}

}  // namespace

std::string describe(const ChainConfig& c) {
  std::ostringstream out;
  out << "L=" << c.L << " a=" << c.a << " b=" << c.b << " theta=" << c.theta
      << " tau=" << c.tau;
  return out.str();
}

std::vector<GridPoint> grid_points(const SweepPlan& plan) {
  if (plan.couple_ab && plan.axes.b)
    throw std::invalid_argument("sweep: couple_ab is incompatible with an explicit b axis");
  const std::vector<int> base_L{plan.base.L};
  const std::vector<double> base_a{plan.base.a}, base_b{plan.base.b},
      base_theta{plan.base.theta}, base_tau{plan.base.tau};
  const auto& Ls = axis_or_base(plan.axes.L, base_L, "L");
  const auto& as = axis_or_base(plan.axes.a, base_a, "a");
  const auto& bs = axis_or_base(plan.axes.b, base_b, "b");
  const auto& thetas = axis_or_base(plan.axes.theta, base_theta, "theta");
  const auto& taus = axis_or_base(plan.axes.tau, base_tau, "tau");

  std::vector<GridPoint> points;
  std::size_t index = 0;
  for (const int L : Ls)
    for (const double a : as)
      for (const double b : plan.couple_ab ? std::vector<double>{a} : bs)
        for (const double theta : thetas)
          for (const double tau : taus) {
            ChainConfig config = plan.base;
            config.L = L;
            config.a = a;
            config.b = b;
            config.theta = theta;
            config.tau = tau;
            validate_config(config);
            points.push_back({index++, config});
          }
  return points;
}

std::vector<Job> plan_sweep(const SweepPlan& plan) {
  if (plan.samples < 1) throw std::invalid_argument("plan_sweep: samples must be >= 1");
  const std::vector<GridPoint> points = grid_points(plan);
  std::vector<Job> jobs;
  jobs.reserve(points.size() * static_cast<std::size_t>(plan.samples));
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(jobs.capacity());
  for (const GridPoint& point : points) {
    for (int s = 0; s < plan.samples; ++s) {
      const std::uint64_t seed =
          derive_seed(plan.master_seed, point.index, static_cast<std::uint64_t>(s));
      if (!seen.insert(seed).second)
        throw NumericalError("plan_sweep: seed collision at " + describe(point.config) +
                             " sample " + std::to_string(s));
      jobs.push_back({point, s, seed});
    }
  }
  return jobs;
}

std::vector<double> LevelStatsObservable::evaluate(const Context& ctx, const Job& job) const {
  SplitMix64 stream(job.seed);
  KickAngles kick = sample_kick_angles(ctx.config.theta, ctx.config.L, stream);
  kick.master_seed = job.seed;
  kick.sample_index = static_cast<std::uint64_t>(job.sample_index);
  const Eigen::MatrixXcd U = floquet_from_context(ctx, kick);
  return {gap_ratios(floquet_phases(U)).mean_r};
}

std::vector<std::string> DynamicsObservable::names() const {
  std::vector<std::string> out;
  out.reserve(2 * grid.size());
  for (const auto t : grid.times) out.push_back("SvN@" + std::to_string(t));
  for (const auto t : grid.times) out.push_back("I@" + std::to_string(t));
  return out;
}

std::vector<double> DynamicsObservable::evaluate(const Context& ctx, const Job& job) const {
  SplitMix64 stream(job.seed);
  KickAngles kick = sample_kick_angles(ctx.config.theta, ctx.config.L, stream);
  kick.master_seed = job.seed;
  kick.sample_index = static_cast<std::uint64_t>(job.sample_index);
  const Eigen::MatrixXcd U = floquet_from_context(ctx, kick);
  const FloquetDecomposition decomp = diagonalize_floquet(U);
  const SectorState psi0 = neel_state(ctx.basis);
  const std::vector<SectorState> states = evolve_stroboscopic(decomp, psi0, grid.times);

  std::vector<double> out;
  out.reserve(2 * states.size());
  for (const SectorState& s : states) out.push_back(entanglement_entropy(s, ctx.basis));
  for (const SectorState& s : states) out.push_back(imbalance(s, ctx.basis));
  return out;
}

namespace {

using nlohmann::json;

json record_to_json(const AggregateRecord& r) {
  return json{{"observable", r.observable}, {"mean", r.mean},
              {"std_error", r.std_error},   {"samples", r.samples},
              {"excluded", r.excluded}};
}

}  // namespace

std::optional<std::vector<AggregateRecord>> checkpoint_lookup(
    const std::filesystem::path& file, std::size_t grid_index, const ChainConfig& config) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json entry = json::parse(line, nullptr, false);
    if (entry.is_discarded()) continue;  // partial/interrupted line
    if (entry.value("grid_index", static_cast<std::size_t>(-1)) != grid_index) continue;
    if (config_from_json(entry.at("config")) != config) continue;
    std::vector<AggregateRecord> records;
    for (const auto& r : entry.at("records")) {
      records.push_back({grid_index, config, r.at("observable").get<std::string>(),
                         r.at("mean").get<double>(), r.at("std_error").get<double>(),
                         r.at("samples").get<int>(), r.at("excluded").get<int>()});
    }
    return records;
  }
  return std::nullopt;
}

void checkpoint_append(const std::filesystem::path& file, std::size_t grid_index,
                       const ChainConfig& config,
                       const std::vector<AggregateRecord>& records) {
  json entry{{"grid_index", grid_index}, {"config", config_to_json(config)}};
  entry["records"] = json::array();
  for (const auto& r : records) entry["records"].push_back(record_to_json(r));
  std::ofstream out(file, std::ios::app);
  if (!out)
    throw std::runtime_error("checkpoint: cannot open " + file.string() + " for append");
  out << entry.dump() << "\n";
}

}  // namespace floq
