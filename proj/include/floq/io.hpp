#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "floq/analysis.hpp"
#include "floq/ensemble.hpp"

namespace floq {

inline constexpr const char* kArtifactName = "floq";
inline constexpr const char* kArtifactVersion = "0.1.0";

// Fixed 17-significant-digit formatting: round-trips IEEE doubles exactly,
// which the byte-identical determinism checks rely on.
std::string format_g17(double x);

// Infinite exponents serialize as the string "inf" (JSON has no infinity).
nlohmann::json json_number(double x);
double number_from_json(const nlohmann::json& j);

nlohmann::json config_to_json(const ChainConfig& config);
ChainConfig config_from_json(const nlohmann::json& j);

nlohmann::json plan_to_json(const SweepPlan& plan);

// Convention flags echoed into every manifest, so convention-sensitive
// numbers (tau_c in particular) stay auditable.
nlohmann::json convention_flags();

// Skeleton manifest; callers add command-specific fields and timings before
// writing. The wall-clock stamp and timings are the only non-deterministic
// fields in any output.
nlohmann::json make_manifest(const std::string& command, std::uint64_t master_seed);
void write_manifest(const std::filesystem::path& path, const nlohmann::json& manifest);

// Manifest path for a given output file: "<out>.manifest.json".
std::filesystem::path manifest_path_for(const std::filesystem::path& out);

struct LevelStatsRow {
  int L = 0;
  double a = 0, b = 0, theta = 0, tau = 0;
  double mean_r = 0, stderr_r = 0;
  int samples = 0, excluded = 0;
};

// CSV columns: L,a,b,theta,tau,mean_r,stderr_r,samples,excluded.
// The header carries a format version; a '#' comment references the manifest.
void write_levelstats_csv(const std::filesystem::path& path,
                          const std::vector<LevelStatsRow>& rows,
                          const std::string& manifest_name);
std::vector<LevelStatsRow> read_levelstats_csv(const std::filesystem::path& path);

std::vector<LevelStatsRow> levelstats_rows(const std::vector<AggregateRecord>& records);

// Groups rows by L into a ScalingDataset (tau ascending per size). Rejects
// inputs where a size carries duplicate tau values (several parameter sets
// mixed in one file) or non-positive errors.
ScalingDataset scaling_dataset_from_rows(const std::vector<LevelStatsRow>& rows);

struct DynamicsRow {
  std::int64_t t = 0;
  double mean_svn = 0, stderr_svn = 0;
  double mean_imbalance = 0, stderr_imbalance = 0;
  int samples = 0;
};

// CSV columns: t,mean_SvN,stderr_SvN,mean_imbalance,stderr_imbalance,samples.
void write_dynamics_csv(const std::filesystem::path& path,
                        const std::vector<DynamicsRow>& rows,
                        const std::string& manifest_name);
std::vector<DynamicsRow> read_dynamics_csv(const std::filesystem::path& path);

TimeSeries entropy_series(const std::vector<DynamicsRow>& rows);
TimeSeries imbalance_series(const std::vector<DynamicsRow>& rows);

}  // namespace floq
