// floq — stroboscopic simulator and analysis toolkit for randomly kicked
// long-range spin-1/2 chains.
//
// Subcommands: levelstats (quasi-energy gap-ratio sweeps), dynamics
// (entanglement entropy and imbalance of a kicked Neel state), collapse
// (finite-size-scaling fit of <r>(tau) curves), fit (entanglement growth-law
// fits and model comparison).
//
// Exit codes: 0 success, 1 usage/config error, 2 numerical failure.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "floq/commands.hpp"

namespace {

struct LevelStatsArgs {
  std::vector<int> L;
  std::vector<double> a, b, theta, tau;
  bool couple_ab = false;
  floq::ChainConfig base;
  int samples = 200;
  std::uint64_t seed = 1;
  int workers = 1;
  std::string out;
  std::string checkpoint;
};

struct DynamicsArgs {
  floq::ChainConfig config;
  int samples = 200;
  std::uint64_t seed = 1;
  std::int64_t t_max = 1000000;
  int t_points = 120;
  int workers = 1;
  std::string out;
  std::string checkpoint;
};

void add_common_chain_options(CLI::App* cmd, floq::ChainConfig* config) {
  cmd->add_option("--Jx", config->J_x, "Tunneling strength");
  cmd->add_option("--Jz", config->J_z, "Ising strength");
}

std::optional<std::filesystem::path> optional_path(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return std::filesystem::path(s);
}

}  // namespace

int main(int argc, char** argv) {
  // worker threads parallelize over disorder samples; keep BLAS serial
  setenv("OPENBLAS_NUM_THREADS", "1", 0);

  CLI::App app{"floq - randomly kicked long-range spin-1/2 chains"};
  app.require_subcommand(1);

  LevelStatsArgs ls;
  CLI::App* levelstats = app.add_subcommand(
      "levelstats", "Disorder-averaged quasi-energy gap-ratio sweep -> CSV");
  levelstats->set_config("--config", "", "Key=value config file");
  levelstats->add_option("--L", ls.L, "System sizes (even)");
  levelstats->add_option("--a", ls.a, "Tunneling exponents ('inf' for nearest-neighbor)");
  levelstats->add_option("--b", ls.b, "Ising exponents");
  levelstats->add_option("--theta", ls.theta, "Kick strengths in [0, pi]");
  levelstats->add_option("--tau", ls.tau, "Drive periods");
  levelstats->add_flag("--couple-ab", ls.couple_ab, "Set b = a along the a axis");
  add_common_chain_options(levelstats, &ls.base);
  levelstats->add_option("--samples", ls.samples, "Disorder samples per grid point");
  levelstats->add_option("--seed", ls.seed, "Master seed");
  levelstats->add_option("--workers", ls.workers, "Concurrent sample jobs");
  levelstats->add_option("--out", ls.out, "Output CSV path")->required();
  levelstats->add_option("--checkpoint", ls.checkpoint,
                         "Checkpoint file (resume completed grid points)");

  DynamicsArgs dy;
  CLI::App* dynamics = app.add_subcommand(
      "dynamics", "Kicked-Neel entanglement entropy and imbalance -> CSV");
  dynamics->set_config("--config", "", "Key=value config file");
  dynamics->add_option("--L", dy.config.L, "System size (even)");
  dynamics->add_option("--a", dy.config.a, "Tunneling exponent ('inf' for nearest-neighbor)");
  dynamics->add_option("--b", dy.config.b, "Ising exponent");
  dynamics->add_option("--theta", dy.config.theta, "Kick strength in [0, pi]");
  dynamics->add_option("--tau", dy.config.tau, "Drive period");
  add_common_chain_options(dynamics, &dy.config);
  dynamics->add_option("--samples", dy.samples, "Disorder samples");
  dynamics->add_option("--seed", dy.seed, "Master seed");
  dynamics->add_option("--t-max", dy.t_max, "Largest kick count");
  dynamics->add_option("--t-points", dy.t_points, "Log-grid density");
  dynamics->add_option("--workers", dy.workers, "Concurrent sample jobs");
  dynamics->add_option("--out", dy.out, "Output CSV path")->required();
  dynamics->add_option("--checkpoint", dy.checkpoint, "Checkpoint file");

  floq::CollapseRequest co;
  std::string co_in, co_out;
  CLI::App* collapse = app.add_subcommand(
      "collapse", "Finite-size-scaling collapse of a levelstats CSV -> JSON");
  collapse->add_option("--in", co_in, "Input levelstats CSV")->required();
  collapse->add_option("--out", co_out, "Output JSON path")->required();
  collapse->add_option("--tau-min", co.box.tau_min, "Search box: smallest tau_c");
  collapse->add_option("--tau-max", co.box.tau_max, "Search box: largest tau_c");
  collapse->add_option("--nu-min", co.box.nu_min, "Search box: smallest nu");
  collapse->add_option("--nu-max", co.box.nu_max, "Search box: largest nu");
  collapse->add_option("--grid", co.grid_points, "Coarse scan points per axis (>= 21)");

  floq::FitRequest fi;
  std::string fi_in, fi_out;
  std::int64_t fit_t_min = 0, fit_t_max = 0;
  CLI::App* fit = app.add_subcommand(
      "fit", "Entanglement growth-law fits on a dynamics CSV -> JSON");
  fit->add_option("--in", fi_in, "Input dynamics CSV")->required();
  fit->add_option("--out", fi_out, "Output JSON path")->required();
  fit->add_option("--t-min", fit_t_min, "Fit window start (default 10)");
  fit->add_option("--t-max", fit_t_max,
                  "Fit window end (default: 95%-of-plateau rule)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (levelstats->parsed()) {
      floq::LevelStatsRequest request;
      request.plan.base = ls.base;
      if (!ls.L.empty()) request.plan.axes.L = ls.L;
      if (!ls.a.empty()) request.plan.axes.a = ls.a;
      if (!ls.b.empty()) request.plan.axes.b = ls.b;
      if (!ls.theta.empty()) request.plan.axes.theta = ls.theta;
      if (!ls.tau.empty()) request.plan.axes.tau = ls.tau;
      request.plan.couple_ab = ls.couple_ab;
      request.plan.samples = ls.samples;
      request.plan.master_seed = ls.seed;
      request.workers = ls.workers;
      request.out = ls.out;
      request.checkpoint = optional_path(ls.checkpoint);
      floq::cmd_levelstats(request);
    } else if (dynamics->parsed()) {
      floq::DynamicsRequest request;
      request.config = dy.config;
      request.samples = dy.samples;
      request.master_seed = dy.seed;
      request.t_max = dy.t_max;
      request.t_points = dy.t_points;
      request.workers = dy.workers;
      request.out = dy.out;
      request.checkpoint = optional_path(dy.checkpoint);
      floq::cmd_dynamics(request);
    } else if (collapse->parsed()) {
      co.in = co_in;
      co.out = co_out;
      floq::cmd_collapse(co);
    } else if (fit->parsed()) {
      fi.in = fi_in;
      fi.out = fi_out;
      if (fit_t_min > 0 || fit_t_max > 0) {
        if (fit_t_min <= 0) fit_t_min = 10;
        if (fit_t_max <= fit_t_min) {
          std::cerr << "fit: --t-max must exceed --t-min\n";
          return 1;
        }
        fi.window = floq::Window{fit_t_min, fit_t_max};
      }
      floq::cmd_fit(fi);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error (usage): " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error (numerical): " << e.what() << "\n";
    return 2;
  }
  return 0;
}
