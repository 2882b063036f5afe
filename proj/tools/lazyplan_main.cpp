#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lazyplan/algorithms.hpp"
#include "lazyplan/bench.hpp"
#include "lazyplan/io.hpp"
#include "lazyplan/roadmap.hpp"
#include "lazyplan/world.hpp"

namespace {

using namespace lazyplan;

// Exit codes: 0 solved / success, 1 no solution, 2 usage or input error.
constexpr int kExitSolved = 0;
constexpr int kExitNoSolution = 1;
constexpr int kExitUsage = 2;

Eigen::VectorXd parse_coords(const std::vector<double>& values) {
  Eigen::VectorXd v(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) v[i] = values[i];
  return v;
}

int cmd_gen_world(int dim, const std::vector<double>& lo, const std::vector<double>& hi,
                  int obstacles, double size_min, double size_max, std::uint64_t seed,
                  const std::string& out) {
  WorldBounds bounds = lo.empty() ? WorldBounds::unit_cube(dim)
                                  : WorldBounds::make(parse_coords(lo), parse_coords(hi));
  const World world = sample_world(bounds, obstacles, size_min, size_max, seed);
  io::save_world(world, out);
  std::cerr << "wrote " << out << " (dim=" << bounds.dim() << ", obstacles=" << obstacles
            << ", seed=" << seed << ")\n";
  return kExitSolved;
}

int cmd_build_graph(int dim, const std::vector<double>& lo, const std::vector<double>& hi,
                    std::int64_t n, double gamma, std::uint64_t seed,
                    const std::string& out) {
  WorldBounds bounds = lo.empty() ? WorldBounds::unit_cube(dim)
                                  : WorldBounds::make(parse_coords(lo), parse_coords(hi));
  const Roadmap rm = build_roadmap(bounds, n, gamma, seed);
  if (rm.isolated_vertices > 0)
    std::cerr << "warning: " << rm.isolated_vertices << " isolated vertices\n";
  io::save_roadmap(rm, out);
  std::cerr << "wrote " << out << " (N=" << rm.size() << ", edges=" << rm.edge_count()
            << ", radius=" << io::fmt_g17(rm.radius) << ")\n";
  return kExitSolved;
}

int cmd_plan(const std::string& graph_path, const std::string& world_path,
             const std::vector<double>& start, const std::vector<double>& goal,
             const std::string& algo, double epsilon, int lookahead, bool no_stale_skip) {
  const auto algorithm = algorithm_from_name(algo);
  if (!algorithm) {
    std::string valid;
    for (const auto& name : planner_names()) valid += (valid.empty() ? "" : "|") + name;
    std::cerr << "error: unknown algorithm '" << algo << "' (valid: " << valid << ")\n";
    return kExitUsage;
  }
  const Roadmap base = io::load_roadmap(graph_path);
  const World world = io::load_world(world_path);
  if (base.dim() != world.bounds.dim()) {
    std::cerr << "error: graph dim " << base.dim() << " != world dim "
              << world.bounds.dim() << "\n";
    return kExitUsage;
  }

  SearchResult res;
  try {
    const auto [rm, query] =
        attach_query(base, world.bounds, parse_coords(start), parse_coords(goal));
    EdgeEvaluator evaluator(world, rm);
    SearchOptions opts;
    opts.epsilon = epsilon;
    opts.lookahead = lookahead;
    opts.stale_skip = !no_stale_skip;
    res = run_algorithm(*algorithm, rm, query, evaluator, opts);
  } catch (const std::runtime_error& ex) {
    // Isolated start/goal: the query cannot reach the roadmap at all.
    std::cerr << ex.what() << "\n";
    res.status = SearchStatus::NoSolution;
    res.algorithm = *algorithm;
    res.epsilon = epsilon;
  }

  std::cout << io::result_to_json(res, world.seed, base.seed);
  std::cerr << "status=" << (res.solved() ? "Solved" : "NoSolution")
            << " cost=" << io::fmt_g17(res.cost)
            << " edge_evals=" << res.counters.edge_evaluations
            << " expansions=" << res.counters.vertex_expansions
            << " pushes=" << res.counters.queue_pushes
            << " pops=" << res.counters.queue_pops
            << " time_ns=" << res.counters.wall_time_ns << "\n";
  return res.solved() ? kExitSolved : kExitNoSolution;
}

int cmd_bench(const std::string& config_arg, const std::string& out_dir, int jobs_override,
              std::uint64_t seed_override, bool has_seed) {
  BenchConfig config;
  if (config_arg.rfind("builtin:", 0) == 0) {
    config = builtin_config(config_arg.substr(8));
  } else {
    config = config_from_json(io::read_file(config_arg));
  }
  if (jobs_override > 0) config.jobs = jobs_override;
  if (has_seed) config.master_seed = seed_override;

  std::filesystem::create_directories(out_dir);
  BenchmarkReport report = run_benchmark(config);
  io::write_file_atomic(out_dir + "/records.csv", records_to_csv(report.records));
  io::write_file_atomic(out_dir + "/report.json", report_to_json(report));
  print_tables(report, std::cout);
  std::cerr << "wrote " << out_dir << "/records.csv and " << out_dir << "/report.json ("
            << report.records.size() << " records)\n";
  return kExitSolved;
}

int cmd_aggregate(const std::string& records_path, const std::string& by,
                  const std::string& out) {
  const auto records = records_from_csv(io::read_file(records_path));
  std::vector<std::string> keys;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= by.size(); ++i) {
    if (i == by.size() || by[i] == ',') {
      if (i > start) keys.push_back(by.substr(start, i - start));
      start = i + 1;
    }
  }
  const auto rows = aggregate(records, keys);
  std::string csv =
      "algorithm,epsilon,N,obstacles,count,solved,no_solution,mean_cost,median_cost,"
      "stddev_cost,mean_time_s,median_time_s,stddev_time_s,mean_edge_evals,"
      "median_edge_evals,stddev_edge_evals,mean_expansions,median_expansions,"
      "stddev_expansions\n";
  for (const AggregateRow& r : rows) {
    csv += r.algorithm + ',' + io::fmt_g17(r.epsilon) + ',' + std::to_string(r.n_vertices) +
           ',' + std::to_string(r.obstacles) + ',' + std::to_string(r.count) + ',' +
           std::to_string(r.solved) + ',' + std::to_string(r.no_solution) + ',' +
           io::fmt_g17(r.mean_cost) + ',' + io::fmt_g17(r.median_cost) + ',' +
           io::fmt_g17(r.stddev_cost) + ',' + io::fmt_g17(r.mean_time_s) + ',' +
           io::fmt_g17(r.median_time_s) + ',' + io::fmt_g17(r.stddev_time_s) + ',' +
           io::fmt_g17(r.mean_edge_evals) + ',' + io::fmt_g17(r.median_edge_evals) + ',' +
           io::fmt_g17(r.stddev_edge_evals) + ',' + io::fmt_g17(r.mean_expansions) + ',' +
           io::fmt_g17(r.median_expansions) + ',' + io::fmt_g17(r.stddev_expansions) + '\n';
  }
  if (out.empty())
    std::cout << csv;
  else
    io::write_file_atomic(out, csv);
  return kExitSolved;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lazy shortest-path planning over roadmap graphs"};
  app.require_subcommand(1);

  // gen-world
  auto* gen = app.add_subcommand("gen-world", "sample a random obstacle world");
  int gw_dim = 2, gw_obstacles = 8;
  std::vector<double> gw_lo, gw_hi;
  double gw_size_min = 0.05, gw_size_max = 0.25;
  std::uint64_t gw_seed = 0;
  std::string gw_out;
  gen->add_option("--dim", gw_dim, "dimension (used when --lo/--hi absent)");
  gen->add_option("--lo", gw_lo, "lower bounds, comma separated")->delimiter(',');
  gen->add_option("--hi", gw_hi, "upper bounds, comma separated")->delimiter(',');
  gen->add_option("--obstacles", gw_obstacles, "number of boxes");
  gen->add_option("--size-min", gw_size_min, "minimum box side length");
  gen->add_option("--size-max", gw_size_max, "maximum box side length");
  gen->add_option("--seed", gw_seed, "world seed")->required();
  gen->add_option("--out", gw_out, "output world JSON path")->required();

  // build-graph
  auto* build = app.add_subcommand("build-graph", "build an r-disk roadmap (no collision checks)");
  int bg_dim = 2;
  std::vector<double> bg_lo, bg_hi;
  std::int64_t bg_n = 1000;
  double bg_gamma = 0.0;
  std::uint64_t bg_seed = 0;
  std::string bg_out;
  build->add_option("--dim", bg_dim, "dimension (used when --lo/--hi absent)");
  build->add_option("--lo", bg_lo, "lower bounds")->delimiter(',');
  build->add_option("--hi", bg_hi, "upper bounds")->delimiter(',');
  build->add_option("--n", bg_n, "vertex count")->required();
  build->add_option("--gamma", bg_gamma, "radius constant (default: PRM* constant)");
  build->add_option("--seed", bg_seed, "graph seed")->required();
  build->add_option("--out", bg_out, "output path (.bin for binary, else JSON)")->required();

  // plan
  auto* plan = app.add_subcommand("plan", "run one planner on one query");
  std::string pl_graph, pl_world, pl_algo = "lea";
  std::vector<double> pl_start, pl_goal;
  double pl_eps = 1.0;
  int pl_lookahead = 4;
  bool pl_no_stale_skip = false;
  plan->add_option("--graph", pl_graph, "roadmap file")->required();
  plan->add_option("--world", pl_world, "world file")->required();
  plan->add_option("--start", pl_start, "start coordinates x,y[,...]")
      ->delimiter(',')
      ->required();
  plan->add_option("--goal", pl_goal, "goal coordinates x,y[,...]")
      ->delimiter(',')
      ->required();
  plan->add_option("--algo", pl_algo, "astar|lea|lwa|lazysp|lra");
  plan->add_option("--epsilon", pl_eps, "heuristic inflation >= 1");
  plan->add_option("--lookahead", pl_lookahead, "LRA* lookahead >= 1");
  plan->add_flag("--no-stale-skip", pl_no_stale_skip, "process superseded queue entries too");

  // bench
  auto* bench = app.add_subcommand("bench", "run a benchmark sweep");
  std::string bn_config, bn_out = "bench-out";
  int bn_jobs = 0;
  std::uint64_t bn_seed = 0;
  bench->add_option("--config", bn_config, "config JSON path or builtin:<name>")->required();
  bench->add_option("--out", bn_out, "output directory");
  bench->add_option("--jobs", bn_jobs, "worker threads (0 = config value)");
  auto* seed_opt = bench->add_option("--seed", bn_seed, "override master seed");

  // aggregate
  auto* agg = app.add_subcommand("aggregate", "group raw records into table rows");
  std::string ag_records, ag_by = "algorithm,epsilon,N,obstacles", ag_out;
  agg->add_option("--records", ag_records, "records.csv path")->required();
  agg->add_option("--by", ag_by, "group keys: algorithm,epsilon,N,obstacles");
  agg->add_option("--out", ag_out, "output CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints help/error text
    return kExitUsage;
  }

  try {
    if (gen->parsed())
      return cmd_gen_world(gw_dim, gw_lo, gw_hi, gw_obstacles, gw_size_min, gw_size_max,
                           gw_seed, gw_out);
    if (build->parsed())
      return cmd_build_graph(bg_dim, bg_lo, bg_hi, bg_n, bg_gamma, bg_seed, bg_out);
    if (plan->parsed())
      return cmd_plan(pl_graph, pl_world, pl_start, pl_goal, pl_algo, pl_eps, pl_lookahead,
                      pl_no_stale_skip);
    if (bench->parsed()) return cmd_bench(bn_config, bn_out, bn_jobs, bn_seed, seed_opt->count() > 0);
    if (agg->parsed()) return cmd_aggregate(ag_records, ag_by, ag_out);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
