#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "lazyplan/algorithms.hpp"
#include "lazyplan/roadmap.hpp"
#include "lazyplan/world.hpp"

namespace lazyplan {

struct ObstaclePreset {
  std::string name;
  int obstacles = 0;
  double size_min = 0.05;
  double size_max = 0.25;
};

// Obstacle-count triples shipped as named presets: the prose triple
// {8, 16, 24} and the results-table triple {8, 18, 28}. The harness
// treats obstacle counts as free parameters.
std::vector<ObstaclePreset> presets_text_triple();
std::vector<ObstaclePreset> presets_table_triple();

struct BenchConfig {
  int dim = 2;
  Eigen::VectorXd bounds_lo;  // empty -> unit cube of `dim`
  Eigen::VectorXd bounds_hi;
  std::vector<std::int64_t> graph_sizes;
  std::vector<ObstaclePreset> presets;
  int envs_per_preset = 5;
  int queries_per_env = 20;
  std::vector<double> epsilons = {1.0};
  std::vector<Algorithm> algorithms;
  std::uint64_t master_seed = 1;
  int lookahead = 4;
  double gamma = 0.0;          // <= 0 selects the PRM* constant
  bool timing_warmup = false;  // run each planner once untimed first
  int jobs = 0;                // 0 -> hardware concurrency

  WorldBounds bounds() const;
  void validate() const;  // throws std::invalid_argument
};

// Named configurations. desk-scale is the CI-sized replica of the 2D
// experiment; paper-replica is the full 7,500-problem sweep;
// timing-n20000 is the large-graph wall-time comparison.
BenchConfig desk_scale_config();
BenchConfig paper_replica_config();
BenchConfig timing_n20000_config();
const std::vector<std::string>& builtin_config_names();
BenchConfig builtin_config(const std::string& name);

std::string config_to_json(const BenchConfig& config);
BenchConfig config_from_json(const std::string& text);

// One planning problem: every algorithm/epsilon cell sees this exact
// (roadmap, world, query) triple.
struct BenchInstance {
  std::int64_t n_vertices = 0;
  int preset_idx = 0;
  int env_idx = 0;
  int query_idx = 0;
  std::uint64_t graph_seed = 0;
  std::uint64_t world_seed = 0;
  Query query;
};

// Deterministic seed tree (documented in the README): roadmaps depend
// on (master, N) only, worlds on (master, preset, env), queries on
// (master, N, preset, env, q).
std::uint64_t bench_graph_seed(const BenchConfig& c, std::int64_t n_vertices);
std::uint64_t bench_world_seed(const BenchConfig& c, int preset_idx, int env_idx);
Query bench_query(const BenchConfig& c, std::int64_t n_vertices, int preset_idx,
                  int env_idx, int query_idx);

// Instances in record order: N, then preset, then env, then query.
std::vector<BenchInstance> enumerate_instances(const BenchConfig& config);

struct RawRecord {
  Algorithm algorithm = Algorithm::AStar;
  double epsilon = 1.0;
  std::int64_t n_vertices = 0;
  int obstacles = 0;
  std::uint64_t env_seed = 0;
  int query_idx = 0;
  SearchStatus status = SearchStatus::NoSolution;
  double cost = kInfCost;
  std::uint64_t edge_evals = 0;
  std::uint64_t vertex_expansions = 0;
  std::uint64_t queue_pushes = 0;
  std::uint64_t queue_pops = 0;
  std::uint64_t time_ns = 0;
};

std::string records_to_csv(const std::vector<RawRecord>& records);
std::vector<RawRecord> records_from_csv(const std::string& text);

// Aggregate statistics over the records of one group. Means, medians
// and standard deviations of cost and time cover solved records only;
// evaluation/expansion stats cover all records.
struct AggregateRow {
  std::string algorithm;       // "*" when not grouped by that key
  double epsilon = -1.0;       // -1 when not grouped
  std::int64_t n_vertices = -1;
  int obstacles = -1;
  std::int64_t count = 0;
  std::int64_t solved = 0;
  std::int64_t no_solution = 0;
  double mean_cost = 0, median_cost = 0, stddev_cost = 0;
  double mean_time_s = 0, median_time_s = 0, stddev_time_s = 0;
  double mean_edge_evals = 0, median_edge_evals = 0, stddev_edge_evals = 0;
  double mean_expansions = 0, median_expansions = 0, stddev_expansions = 0;
};

// group_keys may contain: algorithm, epsilon, N, obstacles. Rows come
// out sorted by their key tuple. Unknown keys are rejected.
std::vector<AggregateRow> aggregate(const std::vector<RawRecord>& records,
                                    const std::vector<std::string>& group_keys);

struct BenchmarkReport {
  BenchConfig config;
  std::vector<RawRecord> records;
  std::vector<AggregateRow> rows;  // grouped by (algorithm, epsilon, N, obstacles)
};

// Runs the full cross product; per-instance planner failures are
// recorded as NoSolution rows and never abort the sweep. Counts are
// reproducible run to run; wall times are not.
BenchmarkReport run_benchmark(const BenchConfig& config);

std::string report_to_json(const BenchmarkReport& report);
// Loads report + records and re-derives the aggregate rows from the raw
// records, throwing if they disagree.
BenchmarkReport load_report(const std::string& report_path, const std::string& csv_path);

// Relative planning time and path cost versus epsilon=1 per algorithm,
// plus the LEA*-over-LazySP mean-evaluation ratio per epsilon. Requires
// at least two epsilon values in the records.
struct TrendEntry {
  std::string algorithm;
  double epsilon = 1.0;
  double time_vs_eps1 = 1.0;  // mean time / mean time at eps=1
  double cost_vs_eps1 = 1.0;  // mean solved cost / mean at eps=1
};

struct TrendReport {
  std::vector<TrendEntry> entries;
  std::vector<std::pair<double, double>> lea_over_lazysp;  // (epsilon, ratio)
};

TrendReport trend_report(const std::vector<RawRecord>& records);

// Fixed-width tables in the layout of the planning-time and
// edge-evaluation result tables: one row per (algorithm, epsilon), one
// column per (N, obstacles).
void print_tables(const BenchmarkReport& report, std::ostream& out);

}  // namespace lazyplan
