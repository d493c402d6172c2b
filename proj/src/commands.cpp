#include "floq/commands.hpp"

#include <chrono>
#include <fstream>
#include <map>

#include "floq/dynamics.hpp"

namespace floq {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

void cmd_levelstats(const LevelStatsRequest& request) {
  const auto start = Clock::now();
  const std::vector<AggregateRecord> records =
      run_sweep(request.plan, request.workers, LevelStatsObservable{}, request.checkpoint);

  const std::filesystem::path manifest_path = manifest_path_for(request.out);
  write_levelstats_csv(request.out, levelstats_rows(records),
                       manifest_path.filename().string());

  json manifest = make_manifest("levelstats", request.plan.master_seed);
  manifest["plan"] = plan_to_json(request.plan);
  manifest["workers"] = request.workers;
  manifest["output"] = request.out.filename().string();
  manifest["timings"] = {{"total_seconds", seconds_since(start)}};
  write_manifest(manifest_path, manifest);
}

void cmd_dynamics(const DynamicsRequest& request) {
  const auto start = Clock::now();
  validate_config(request.config);
  if (request.config.L % 2 != 0)
    throw std::invalid_argument("dynamics: L must be even for the Neel protocol");

  DynamicsObservable observable{log_time_grid(request.t_max, request.t_points)};
  SweepPlan plan;
  plan.base = request.config;
  plan.samples = request.samples;
  plan.master_seed = request.master_seed;
  const std::vector<AggregateRecord> records =
      run_sweep(plan, request.workers, observable, request.checkpoint);

  std::map<std::string, const AggregateRecord*> by_name;
  for (const auto& r : records) by_name[r.observable] = &r;

  std::vector<DynamicsRow> rows;
  rows.reserve(observable.grid.size() + 1);
  {
    // exact t = 0 anchor from the initial state itself
    const SectorBasis basis = enumerate_sector(request.config.L, request.config.L / 2);
    const SectorState psi0 = neel_state(basis);
    rows.push_back({0, entanglement_entropy(psi0, basis), 0.0, imbalance(psi0, basis),
                    0.0, request.samples});
  }
  for (const auto t : observable.grid.times) {
    const auto& svn = *by_name.at("SvN@" + std::to_string(t));
    const auto& imb = *by_name.at("I@" + std::to_string(t));
    rows.push_back({t, svn.mean, svn.std_error, imb.mean, imb.std_error, svn.samples});
  }

  const std::filesystem::path manifest_path = manifest_path_for(request.out);
  write_dynamics_csv(request.out, rows, manifest_path.filename().string());

  json manifest = make_manifest("dynamics", request.master_seed);
  manifest["config"] = config_to_json(request.config);
  manifest["samples"] = request.samples;
  manifest["t_max"] = request.t_max;
  manifest["t_points_requested"] = request.t_points;
  manifest["t_points_realized"] = observable.grid.times.size();
  manifest["workers"] = request.workers;
  manifest["output"] = request.out.filename().string();
  manifest["timings"] = {{"total_seconds", seconds_since(start)}};
  write_manifest(manifest_path, manifest);
}

void cmd_collapse(const CollapseRequest& request) {
  const auto start = Clock::now();
  const ScalingDataset data =
      scaling_dataset_from_rows(read_levelstats_csv(request.in));
  const CollapseResult result = fit_collapse(data, request.box, request.grid_points);

  json trace = json::array();
  for (const auto& p : result.trace)
    trace.push_back({{"tau_c", p.x(0)}, {"nu", p.x(1)}, {"quality", p.value}});

  const std::filesystem::path manifest_path = manifest_path_for(request.out);
  json out{{"tau_c", result.tau_c},
           {"nu", result.nu},
           {"quality", result.quality},
           {"boundary", result.boundary},
           {"search_box",
            {{"tau_min", request.box.tau_min},
             {"tau_max", request.box.tau_max},
             {"nu_min", request.box.nu_min},
             {"nu_max", request.box.nu_max}}},
           {"grid_evaluations", result.grid_evaluations},
           {"trace", trace},
           {"input", request.in.filename().string()},
           {"manifest", manifest_path.filename().string()}};
  std::ofstream stream(request.out);
  if (!stream) throw std::runtime_error("cannot write " + request.out.string());
  stream << out.dump(2) << "\n";

  json manifest = make_manifest("collapse", 0);
  manifest["input"] = request.in.filename().string();
  manifest["output"] = request.out.filename().string();
  manifest["search_box"] = out["search_box"];
  manifest["grid_points"] = request.grid_points;
  manifest["timings"] = {{"total_seconds", seconds_since(start)}};
  write_manifest(manifest_path, manifest);
}

namespace {

json growth_fit_to_json(const GrowthFit& fit) {
  return json{{"c", fit.c},
              {"gamma", fit.gamma},
              {"d", fit.d},
              {"gamma_stderr", fit.gamma_stderr},
              {"mean_squared_log_residual", fit.residual},
              {"mse", fit.mse},
              {"with_subleading", fit.with_subleading},
              {"converged", fit.converged}};
}

}  // namespace

void cmd_fit(const FitRequest& request) {
  const auto start = Clock::now();
  const TimeSeries series = entropy_series(read_dynamics_csv(request.in));
  const Window window = request.window ? *request.window : default_fit_window(series);

  const ModelComparison cmp = compare_growth_models(series, window);
  const GrowthFit leading_only = fit_log_power(series, window, false);

  const char* preferred = cmp.preferred == PreferredModel::kLogPower      ? "log_power"
                          : cmp.preferred == PreferredModel::kAlgebraic   ? "algebraic"
                                                                          : "inconclusive";
  const std::filesystem::path manifest_path = manifest_path_for(request.out);
  json out{{"window", {{"t_min", window.t_min}, {"t_max", window.t_max}}},
           {"log_power", growth_fit_to_json(cmp.log_power)},
           {"log_power_leading_only", growth_fit_to_json(leading_only)},
           {"algebraic",
            {{"c", cmp.algebraic.c},
             {"gamma", cmp.algebraic.gamma},
             {"gamma_stderr", cmp.algebraic.gamma_stderr},
             {"mse", cmp.algebraic.mse},
             {"converged", cmp.algebraic.converged}}},
           {"mse_log_power", cmp.mse_log_power},
           {"mse_algebraic", cmp.mse_algebraic},
           {"residual_ratio", cmp.ratio},
           {"preferred", preferred},
           {"input", request.in.filename().string()},
           {"manifest", manifest_path.filename().string()}};
  std::ofstream stream(request.out);
  if (!stream) throw std::runtime_error("cannot write " + request.out.string());
  stream << out.dump(2) << "\n";

  json manifest = make_manifest("fit", 0);
  manifest["input"] = request.in.filename().string();
  manifest["output"] = request.out.filename().string();
  manifest["window"] = out["window"];
  manifest["timings"] = {{"total_seconds", seconds_since(start)}};
  write_manifest(manifest_path, manifest);
}

}  // namespace floq
