#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "floq/analysis.hpp"
#include "floq/ensemble.hpp"
#include "floq/io.hpp"

namespace floq {

// Pipeline stages behind the CLI subcommands. Each writes its output file
// plus a "<out>.manifest.json" echoing the full configuration, seed and
// convention flags; outputs are a pure function of (inputs, master seed)
// up to the manifest's timing fields.

struct LevelStatsRequest {
  SweepPlan plan;
  int workers = 1;
  std::filesystem::path out;
  std::optional<std::filesystem::path> checkpoint;
};
// CSV with one row per grid point.
void cmd_levelstats(const LevelStatsRequest& request);

struct DynamicsRequest {
  ChainConfig config;  // one parameter point
  int samples = 1;
  std::uint64_t master_seed = 0;
  std::int64_t t_max = 1000000;
  int t_points = 120;
  int workers = 1;
  std::filesystem::path out;
  std::optional<std::filesystem::path> checkpoint;
};
// CSV with one row per sampled kick count, preceded by the exact t=0 row.
void cmd_dynamics(const DynamicsRequest& request);

struct CollapseRequest {
  std::filesystem::path in;  // levelstats CSV
  std::filesystem::path out;
  SearchBox box;
  int grid_points = 21;
};
// JSON with tau_c, nu, quality, boundary flag and optimizer trace summary.
void cmd_collapse(const CollapseRequest& request);

struct FitRequest {
  std::filesystem::path in;  // dynamics CSV
  std::filesystem::path out;
  std::optional<Window> window;  // default: [10, t*] plateau rule
};
// JSON with both growth-law fits (with and without the subleading term),
// the algebraic fit, residual ratio and preferred model.
void cmd_fit(const FitRequest& request);

}  // namespace floq
