#include "floq/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace floq {

using nlohmann::json;

std::string format_g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

json json_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double number_from_json(const json& j) {
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw std::invalid_argument("expected a number, got string '" + s + "'");
  }
  return j.get<double>();
}

json config_to_json(const ChainConfig& c) {
  return json{{"L", c.L},
              {"J_x", json_number(c.J_x)},
              {"J_z", json_number(c.J_z)},
              {"a", json_number(c.a)},
              {"b", json_number(c.b)},
              {"theta", json_number(c.theta)},
              {"tau", json_number(c.tau)}};
}

ChainConfig config_from_json(const json& j) {
  ChainConfig c;
  c.L = j.at("L").get<int>();
  c.J_x = number_from_json(j.at("J_x"));
  c.J_z = number_from_json(j.at("J_z"));
  c.a = number_from_json(j.at("a"));
  c.b = number_from_json(j.at("b"));
  c.theta = number_from_json(j.at("theta"));
  c.tau = number_from_json(j.at("tau"));
  return c;
}

json plan_to_json(const SweepPlan& plan) {
  json axes;
  auto dump_axis = [&](const char* name, const auto& axis) {
    if (!axis) return;
    json arr = json::array();
    for (const auto v : *axis) arr.push_back(json_number(static_cast<double>(v)));
    axes[name] = arr;
  };
  dump_axis("L", plan.axes.L);
  dump_axis("a", plan.axes.a);
  dump_axis("b", plan.axes.b);
  dump_axis("theta", plan.axes.theta);
  dump_axis("tau", plan.axes.tau);
  return json{{"base", config_to_json(plan.base)},
              {"axes", axes},
              {"samples", plan.samples},
              {"master_seed", plan.master_seed},
              {"couple_ab", plan.couple_ab}};
}

json convention_flags() {
  return json{
      {"pair_sum", "single count over i<j"},
      {"gap_convention", "circular: wrap-around quasi-energy gap included"},
      {"bit_convention", "site 1 = most significant bit; set bit = spin up"},
      {"entropy_log", "natural"},
      {"phase_convention", "phi = arg(lambda) in (-pi, pi]; E = -phi/tau"},
      {"nearest_neighbor_exponent_cutoff", kNearestNeighborExponent}};
}

namespace {

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

json make_manifest(const std::string& command, std::uint64_t master_seed) {
  return json{{"artifact", kArtifactName}, {"version", kArtifactVersion},
              {"command", command},        {"master_seed", master_seed},
              {"conventions", convention_flags()}, {"wall_clock_utc", utc_now()}};
}

void write_manifest(const std::filesystem::path& path, const json& manifest) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write manifest " + path.string());
  out << manifest.dump(2) << "\n";
}

std::filesystem::path manifest_path_for(const std::filesystem::path& out) {
  std::filesystem::path p = out;
  p += ".manifest.json";
  return p;
}

namespace {

constexpr const char* kLevelStatsHeader =
    "L,a,b,theta,tau,mean_r,stderr_r,samples,excluded";
constexpr const char* kDynamicsHeader =
    "t,mean_SvN,stderr_SvN,mean_imbalance,stderr_imbalance,samples";

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

double parse_double(const std::string& s, int line_no) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw std::invalid_argument("CSV parse error at line " + std::to_string(line_no) +
                                ": bad number '" + s + "'");
  return v;
}

long parse_long(const std::string& s, int line_no) {
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0')
    throw std::invalid_argument("CSV parse error at line " + std::to_string(line_no) +
                                ": bad integer '" + s + "'");
  return v;
}

// comment/manifest preamble, then the exact versioned header
std::ifstream open_csv(const std::filesystem::path& path, const char* header,
                       int* line_no) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open CSV file " + path.string());
  std::string line;
  while (std::getline(in, line)) {
    ++*line_no;
    if (line.empty() || line[0] == '#') continue;
    if (line != header)
      throw std::invalid_argument("CSV parse error at line " + std::to_string(*line_no) +
                                  ": expected header '" + std::string(header) + "'");
    return in;
  }
  throw std::invalid_argument("CSV file " + path.string() + " has no header");
}

}  // namespace

void write_levelstats_csv(const std::filesystem::path& path,
                          const std::vector<LevelStatsRow>& rows,
                          const std::string& manifest_name) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "# " << kArtifactName << " levelstats v1\n";
  out << "# manifest: " << manifest_name << "\n";
  out << kLevelStatsHeader << "\n";
  for (const auto& r : rows) {
    out << r.L << ',' << format_g17(r.a) << ',' << format_g17(r.b) << ','
        << format_g17(r.theta) << ',' << format_g17(r.tau) << ','
        << format_g17(r.mean_r) << ',' << format_g17(r.stderr_r) << ',' << r.samples
        << ',' << r.excluded << "\n";
  }
}

std::vector<LevelStatsRow> read_levelstats_csv(const std::filesystem::path& path) {
  int line_no = 0;
  std::ifstream in = open_csv(path, kLevelStatsHeader, &line_no);
  std::vector<LevelStatsRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto f = split_csv(line);
    if (f.size() != 9)
      throw std::invalid_argument("CSV parse error at line " + std::to_string(line_no) +
                                  ": expected 9 fields, got " + std::to_string(f.size()));
    LevelStatsRow r;
    r.L = static_cast<int>(parse_long(f[0], line_no));
    r.a = parse_double(f[1], line_no);
    r.b = parse_double(f[2], line_no);
    r.theta = parse_double(f[3], line_no);
    r.tau = parse_double(f[4], line_no);
    r.mean_r = parse_double(f[5], line_no);
    r.stderr_r = parse_double(f[6], line_no);
    r.samples = static_cast<int>(parse_long(f[7], line_no));
    r.excluded = static_cast<int>(parse_long(f[8], line_no));
    rows.push_back(r);
  }
  return rows;
}

std::vector<LevelStatsRow> levelstats_rows(const std::vector<AggregateRecord>& records) {
  std::vector<LevelStatsRow> rows;
  for (const auto& rec : records) {
    if (rec.observable != "mean_r") continue;
    rows.push_back({rec.config.L, rec.config.a, rec.config.b, rec.config.theta,
                    rec.config.tau, rec.mean, rec.std_error, rec.samples, rec.excluded});
  }
  return rows;
}

ScalingDataset scaling_dataset_from_rows(const std::vector<LevelStatsRow>& rows) {
  std::map<int, std::vector<LevelStatsRow>> by_size;
  for (const auto& r : rows) by_size[r.L].push_back(r);

  ScalingDataset data;
  for (auto& [L, group] : by_size) {
    std::sort(group.begin(), group.end(),
              [](const LevelStatsRow& p, const LevelStatsRow& q) { return p.tau < q.tau; });
    SizeSeries series;
    series.L = L;
    const auto n = static_cast<Eigen::Index>(group.size());
    series.tau.resize(n);
    series.value.resize(n);
    series.error.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& r = group[static_cast<std::size_t>(i)];
      if (i > 0 && !(r.tau > series.tau(i - 1)))
        throw std::invalid_argument(
            "collapse input: duplicate tau " + format_g17(r.tau) + " at L=" +
            std::to_string(L) + " (input must vary tau only)");
      series.tau(i) = r.tau;
      series.value(i) = r.mean_r;
      series.error(i) = r.stderr_r;
    }
    data.sizes.push_back(std::move(series));
  }
  return data;
}

void write_dynamics_csv(const std::filesystem::path& path,
                        const std::vector<DynamicsRow>& rows,
                        const std::string& manifest_name) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "# " << kArtifactName << " dynamics v1\n";
  out << "# manifest: " << manifest_name << "\n";
  out << kDynamicsHeader << "\n";
  for (const auto& r : rows) {
    out << r.t << ',' << format_g17(r.mean_svn) << ',' << format_g17(r.stderr_svn) << ','
        << format_g17(r.mean_imbalance) << ',' << format_g17(r.stderr_imbalance) << ','
        << r.samples << "\n";
  }
}

std::vector<DynamicsRow> read_dynamics_csv(const std::filesystem::path& path) {
  int line_no = 0;
  std::ifstream in = open_csv(path, kDynamicsHeader, &line_no);
  std::vector<DynamicsRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto f = split_csv(line);
    if (f.size() != 6)
      throw std::invalid_argument("CSV parse error at line " + std::to_string(line_no) +
                                  ": expected 6 fields, got " + std::to_string(f.size()));
    DynamicsRow r;
    r.t = parse_long(f[0], line_no);
    r.mean_svn = parse_double(f[1], line_no);
    r.stderr_svn = parse_double(f[2], line_no);
    r.mean_imbalance = parse_double(f[3], line_no);
    r.stderr_imbalance = parse_double(f[4], line_no);
    r.samples = static_cast<int>(parse_long(f[5], line_no));
    rows.push_back(r);
  }
  return rows;
}

namespace {

TimeSeries series_from_rows(const std::vector<DynamicsRow>& rows, bool entropy) {
  TimeSeries s;
  for (const auto& r : rows) {
    if (r.t < 1) continue;  // the t = 0 anchor is not part of the growth data
    s.times.push_back(r.t);
  }
  s.value.resize(static_cast<Eigen::Index>(s.times.size()));
  s.error.resize(static_cast<Eigen::Index>(s.times.size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    if (r.t < 1) continue;
    s.value(i) = entropy ? r.mean_svn : r.mean_imbalance;
    s.error(i) = entropy ? r.stderr_svn : r.stderr_imbalance;
    ++i;
  }
  return s;
}

}  // namespace

TimeSeries entropy_series(const std::vector<DynamicsRow>& rows) {
  return series_from_rows(rows, true);
}

TimeSeries imbalance_series(const std::vector<DynamicsRow>& rows) {
  return series_from_rows(rows, false);
}

}  // namespace floq
