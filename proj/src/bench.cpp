#include "lazyplan/bench.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <iostream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "lazyplan/io.hpp"
#include "lazyplan/rng.hpp"

namespace lazyplan {

using nlohmann::json;

std::vector<ObstaclePreset> presets_text_triple() {
  return {{"sparse", 8, 0.05, 0.25},
          {"medium", 16, 0.05, 0.25},
          {"cluttered", 24, 0.05, 0.25}};
}

std::vector<ObstaclePreset> presets_table_triple() {
  return {{"sparse", 8, 0.05, 0.25},
          {"medium", 18, 0.05, 0.25},
          {"cluttered", 28, 0.05, 0.25}};
}

WorldBounds BenchConfig::bounds() const {
  if (bounds_lo.size() == 0) return WorldBounds::unit_cube(dim);
  return WorldBounds::make(bounds_lo, bounds_hi);
}

void BenchConfig::validate() const {
  if (dim < 2) throw std::invalid_argument("config: dim must be >= 2");
  bounds();  // throws on malformed bounds
  if (graph_sizes.empty()) throw std::invalid_argument("config: graph_sizes empty");
  for (std::int64_t n : graph_sizes)
    if (n < 2) throw std::invalid_argument("config: graph size must be >= 2");
  if (presets.empty()) throw std::invalid_argument("config: presets empty");
  for (const auto& p : presets) {
    if (p.obstacles < 0) throw std::invalid_argument("config: negative obstacle count");
    if (!(p.size_min > 0.0) || p.size_max < p.size_min)
      throw std::invalid_argument("config: bad obstacle size interval");
  }
  if (envs_per_preset < 1) throw std::invalid_argument("config: envs_per_preset < 1");
  if (queries_per_env < 1) throw std::invalid_argument("config: queries_per_env < 1");
  if (epsilons.empty()) throw std::invalid_argument("config: epsilons empty");
  for (double e : epsilons)
    if (!(e >= 1.0)) throw std::invalid_argument("config: epsilon must be >= 1");
  if (algorithms.empty()) throw std::invalid_argument("config: algorithms empty");
  if (lookahead < 1) throw std::invalid_argument("config: lookahead < 1");
}

BenchConfig desk_scale_config() {
  BenchConfig c;
  c.graph_sizes = {200, 1000, 5000};
  c.presets = presets_table_triple();
  c.envs_per_preset = 5;
  c.queries_per_env = 35;
  c.epsilons = {1.0, 1.5, 2.0, 2.5};
  c.algorithms = {Algorithm::AStar, Algorithm::LwaStar, Algorithm::LeaStar,
                  Algorithm::LazySp, Algorithm::LraStar};
  c.master_seed = 1729;
  return c;
}

BenchConfig paper_replica_config() {
  BenchConfig c = desk_scale_config();
  c.graph_sizes = {200, 1000, 5000, 10000, 20000};
  c.envs_per_preset = 10;
  c.queries_per_env = 50;
  return c;
}

BenchConfig timing_n20000_config() {
  BenchConfig c;
  c.graph_sizes = {20000};
  c.presets = presets_table_triple();
  c.envs_per_preset = 1;
  c.queries_per_env = 40;
  c.epsilons = {1.0};
  c.algorithms = {Algorithm::AStar, Algorithm::LwaStar, Algorithm::LeaStar,
                  Algorithm::LazySp};
  c.master_seed = 1729;
  c.timing_warmup = true;
  c.jobs = 1;
  return c;
}

const std::vector<std::string>& builtin_config_names() {
  static const std::vector<std::string> names = {"desk-scale", "paper-replica",
                                                 "timing-n20000"};
  return names;
}

BenchConfig builtin_config(const std::string& name) {
  if (name == "desk-scale") return desk_scale_config();
  if (name == "paper-replica") return paper_replica_config();
  if (name == "timing-n20000") return timing_n20000_config();
  throw std::invalid_argument("unknown builtin config: " + name);
}

std::string config_to_json(const BenchConfig& c) {
  const WorldBounds b = c.bounds();
  std::string out = "{\"dim\":" + std::to_string(c.dim);
  out += ",\"bounds\":{\"lo\":[";
  for (int i = 0; i < b.dim(); ++i) out += (i ? "," : "") + io::fmt_g17(b.lo[i]);
  out += "],\"hi\":[";
  for (int i = 0; i < b.dim(); ++i) out += (i ? "," : "") + io::fmt_g17(b.hi[i]);
  out += "]},\"graph_sizes\":[";
  for (std::size_t i = 0; i < c.graph_sizes.size(); ++i)
    out += (i ? "," : "") + std::to_string(c.graph_sizes[i]);
  out += "],\"presets\":[";
  for (std::size_t i = 0; i < c.presets.size(); ++i) {
    const auto& p = c.presets[i];
    if (i) out += ',';
    out += "{\"name\":\"" + p.name + "\",\"obstacles\":" + std::to_string(p.obstacles);
    out += ",\"size_min\":" + io::fmt_g17(p.size_min);
    out += ",\"size_max\":" + io::fmt_g17(p.size_max) + "}";
  }
  out += "],\"envs_per_preset\":" + std::to_string(c.envs_per_preset);
  out += ",\"queries_per_env\":" + std::to_string(c.queries_per_env);
  out += ",\"epsilons\":[";
  for (std::size_t i = 0; i < c.epsilons.size(); ++i)
    out += (i ? "," : "") + io::fmt_g17(c.epsilons[i]);
  out += "],\"algorithms\":[";
  for (std::size_t i = 0; i < c.algorithms.size(); ++i) {
    if (i) out += ',';
    out += '"';
    out += algorithm_name(c.algorithms[i]);
    out += '"';
  }
  out += "],\"master_seed\":" + std::to_string(c.master_seed);
  out += ",\"lookahead\":" + std::to_string(c.lookahead);
  out += ",\"gamma\":" + io::fmt_g17(c.gamma);
  out += ",\"timing_warmup\":";
  out += c.timing_warmup ? "true" : "false";
  out += ",\"jobs\":" + std::to_string(c.jobs) + "}";
  return out;
}

static BenchConfig config_from_json_obj(const json& j) {
  BenchConfig c;
  c.dim = j.at("dim").get<int>();
  if (j.contains("bounds")) {
    const json& jb = j.at("bounds");
    c.bounds_lo.resize(jb.at("lo").size());
    c.bounds_hi.resize(jb.at("hi").size());
    for (std::size_t i = 0; i < jb.at("lo").size(); ++i)
      c.bounds_lo[i] = jb.at("lo").at(i).get<double>();
    for (std::size_t i = 0; i < jb.at("hi").size(); ++i)
      c.bounds_hi[i] = jb.at("hi").at(i).get<double>();
  }
  c.graph_sizes = j.at("graph_sizes").get<std::vector<std::int64_t>>();
  c.presets.clear();
  for (const json& jp : j.at("presets")) {
    ObstaclePreset p;
    p.name = jp.at("name").get<std::string>();
    p.obstacles = jp.at("obstacles").get<int>();
    p.size_min = jp.value("size_min", 0.05);
    p.size_max = jp.value("size_max", 0.25);
    c.presets.push_back(std::move(p));
  }
  c.envs_per_preset = j.at("envs_per_preset").get<int>();
  c.queries_per_env = j.at("queries_per_env").get<int>();
  c.epsilons = j.at("epsilons").get<std::vector<double>>();
  c.algorithms.clear();
  for (const json& ja : j.at("algorithms")) {
    const auto a = algorithm_from_name(ja.get<std::string>());
    if (!a) throw std::invalid_argument("config: unknown algorithm " + ja.get<std::string>());
    c.algorithms.push_back(*a);
  }
  c.master_seed = j.at("master_seed").get<std::uint64_t>();
  c.lookahead = j.value("lookahead", 4);
  c.gamma = j.value("gamma", 0.0);
  c.timing_warmup = j.value("timing_warmup", false);
  c.jobs = j.value("jobs", 0);
  c.validate();
  return c;
}

BenchConfig config_from_json(const std::string& text) {
  return config_from_json_obj(json::parse(text));
}

std::uint64_t bench_graph_seed(const BenchConfig& c, std::int64_t n_vertices) {
  return derive_seed(c.master_seed,
                     {seed_stream::kRoadmap, static_cast<std::uint64_t>(n_vertices)});
}

std::uint64_t bench_world_seed(const BenchConfig& c, int preset_idx, int env_idx) {
  return derive_seed(c.master_seed,
                     {seed_stream::kWorld, static_cast<std::uint64_t>(preset_idx),
                      static_cast<std::uint64_t>(env_idx)});
}

Query bench_query(const BenchConfig& c, std::int64_t n_vertices, int preset_idx,
                  int env_idx, int query_idx) {
  SplitMix64 rng(derive_seed(
      c.master_seed, {seed_stream::kQuery, static_cast<std::uint64_t>(n_vertices),
                      static_cast<std::uint64_t>(preset_idx),
                      static_cast<std::uint64_t>(env_idx),
                      static_cast<std::uint64_t>(query_idx)}));
  const auto n = static_cast<std::uint64_t>(n_vertices);
  Query q;
  q.start = static_cast<VertexId>(rng.next_below(n));
  do {
    q.goal = static_cast<VertexId>(rng.next_below(n));
  } while (q.goal == q.start);
  return q;
}

std::vector<BenchInstance> enumerate_instances(const BenchConfig& c) {
  std::vector<BenchInstance> out;
  out.reserve(c.graph_sizes.size() * c.presets.size() *
              static_cast<std::size_t>(c.envs_per_preset) *
              static_cast<std::size_t>(c.queries_per_env));
  for (std::int64_t n : c.graph_sizes) {
    for (int p = 0; p < static_cast<int>(c.presets.size()); ++p) {
      for (int e = 0; e < c.envs_per_preset; ++e) {
        for (int q = 0; q < c.queries_per_env; ++q) {
          BenchInstance inst;
          inst.n_vertices = n;
          inst.preset_idx = p;
          inst.env_idx = e;
          inst.query_idx = q;
          inst.graph_seed = bench_graph_seed(c, n);
          inst.world_seed = bench_world_seed(c, p, e);
          inst.query = bench_query(c, n, p, e, q);
          out.push_back(inst);
        }
      }
    }
  }
  return out;
}

static const char kCsvHeader[] =
    "algorithm,epsilon,N,obstacles,env_seed,query_idx,status,cost,edge_evals,"
    "vertex_expansions,queue_pushes,queue_pops,time_ns";

std::string records_to_csv(const std::vector<RawRecord>& records) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const RawRecord& r : records) {
    out += algorithm_name(r.algorithm);
    out += ',' + io::fmt_g17(r.epsilon);
    out += ',' + std::to_string(r.n_vertices);
    out += ',' + std::to_string(r.obstacles);
    out += ',' + std::to_string(r.env_seed);
    out += ',' + std::to_string(r.query_idx);
    out += ',';
    out += r.status == SearchStatus::Solved ? "Solved" : "NoSolution";
    out += ',' + io::fmt_g17(r.cost);
    out += ',' + std::to_string(r.edge_evals);
    out += ',' + std::to_string(r.vertex_expansions);
    out += ',' + std::to_string(r.queue_pushes);
    out += ',' + std::to_string(r.queue_pops);
    out += ',' + std::to_string(r.time_ns);
    out += '\n';
  }
  return out;
}

std::vector<RawRecord> records_from_csv(const std::string& text) {
  std::vector<RawRecord> out;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw std::runtime_error("records csv: unexpected header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        f.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (f.size() != 13) throw std::runtime_error("records csv: bad field count");
    RawRecord r;
    const auto a = algorithm_from_name(f[0]);
    if (!a) throw std::runtime_error("records csv: unknown algorithm " + f[0]);
    r.algorithm = *a;
    r.epsilon = std::stod(f[1]);
    r.n_vertices = std::stoll(f[2]);
    r.obstacles = std::stoi(f[3]);
    r.env_seed = std::stoull(f[4]);
    r.query_idx = std::stoi(f[5]);
    if (f[6] == "Solved") r.status = SearchStatus::Solved;
    else if (f[6] == "NoSolution") r.status = SearchStatus::NoSolution;
    else throw std::runtime_error("records csv: bad status " + f[6]);
    r.cost = f[7] == "inf" ? kInfCost : std::stod(f[7]);
    r.edge_evals = std::stoull(f[8]);
    r.vertex_expansions = std::stoull(f[9]);
    r.queue_pushes = std::stoull(f[10]);
    r.queue_pops = std::stoull(f[11]);
    r.time_ns = std::stoull(f[12]);
    out.push_back(r);
  }
  return out;
}

namespace {

struct Stats {
  double mean = 0, median = 0, stddev = 0;
};

Stats compute_stats(std::vector<double> values) {
  Stats s;
  if (values.empty()) return s;
  const double n = static_cast<double>(values.size());
  double sum = 0;
  for (double v : values) sum += v;
  s.mean = sum / n;
  double sq = 0;
  for (double v : values) sq += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(sq / n);
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  s.median = values.size() % 2 ? values[m] : 0.5 * (values[m - 1] + values[m]);
  return s;
}

int algorithm_order(Algorithm a) { return static_cast<int>(a); }

}  // namespace

std::vector<AggregateRow> aggregate(const std::vector<RawRecord>& records,
                                    const std::vector<std::string>& group_keys) {
  if (records.empty()) throw std::invalid_argument("aggregate: no records");
  bool by_alg = false, by_eps = false, by_n = false, by_obs = false;
  for (const std::string& k : group_keys) {
    if (k == "algorithm") by_alg = true;
    else if (k == "epsilon") by_eps = true;
    else if (k == "N") by_n = true;
    else if (k == "obstacles") by_obs = true;
    else throw std::invalid_argument("aggregate: unknown group key " + k);
  }

  using Key = std::tuple<int, double, std::int64_t, int>;
  std::map<Key, std::vector<const RawRecord*>> groups;
  for (const RawRecord& r : records) {
    Key key{by_alg ? algorithm_order(r.algorithm) : -1, by_eps ? r.epsilon : -1.0,
            by_n ? r.n_vertices : -1, by_obs ? r.obstacles : -1};
    groups[key].push_back(&r);
  }

  std::vector<AggregateRow> rows;
  rows.reserve(groups.size());
  for (auto& [key, group] : groups) {
    AggregateRow row;
    row.algorithm =
        by_alg ? std::string(algorithm_name(static_cast<Algorithm>(std::get<0>(key)))) : "*";
    row.epsilon = std::get<1>(key);
    row.n_vertices = std::get<2>(key);
    row.obstacles = std::get<3>(key);
    row.count = static_cast<std::int64_t>(group.size());
    std::vector<double> costs, times, evals, exps;
    for (const RawRecord* r : group) {
      if (r->status == SearchStatus::Solved) {
        ++row.solved;
        costs.push_back(r->cost);
        times.push_back(static_cast<double>(r->time_ns) * 1e-9);
      } else {
        ++row.no_solution;
      }
      evals.push_back(static_cast<double>(r->edge_evals));
      exps.push_back(static_cast<double>(r->vertex_expansions));
    }
    const Stats sc = compute_stats(std::move(costs));
    row.mean_cost = sc.mean, row.median_cost = sc.median, row.stddev_cost = sc.stddev;
    const Stats st = compute_stats(std::move(times));
    row.mean_time_s = st.mean, row.median_time_s = st.median, row.stddev_time_s = st.stddev;
    const Stats se = compute_stats(std::move(evals));
    row.mean_edge_evals = se.mean, row.median_edge_evals = se.median,
    row.stddev_edge_evals = se.stddev;
    const Stats sx = compute_stats(std::move(exps));
    row.mean_expansions = sx.mean, row.median_expansions = sx.median,
    row.stddev_expansions = sx.stddev;
    rows.push_back(std::move(row));
  }
  return rows;
}

BenchmarkReport run_benchmark(const BenchConfig& config) {
  config.validate();
  const WorldBounds bounds = config.bounds();

  std::map<std::int64_t, Roadmap> roadmaps;
  for (std::int64_t n : config.graph_sizes)
    if (!roadmaps.count(n))
      roadmaps.emplace(n, build_roadmap(bounds, n, config.gamma, bench_graph_seed(config, n)));

  std::vector<World> worlds;  // preset-major, env-minor
  for (int p = 0; p < static_cast<int>(config.presets.size()); ++p)
    for (int e = 0; e < config.envs_per_preset; ++e)
      worlds.push_back(sample_world(bounds, config.presets[p].obstacles,
                                    config.presets[p].size_min, config.presets[p].size_max,
                                    bench_world_seed(config, p, e)));

  const std::vector<BenchInstance> instances = enumerate_instances(config);
  const std::size_t per_instance = config.algorithms.size() * config.epsilons.size();

  BenchmarkReport report;
  report.config = config;
  report.records.resize(instances.size() * per_instance);

  const auto run_instance = [&](std::size_t idx) {
    const BenchInstance& inst = instances[idx];
    const Roadmap& rm = roadmaps.at(inst.n_vertices);
    const World& world =
        worlds[static_cast<std::size_t>(inst.preset_idx) * config.envs_per_preset +
               inst.env_idx];
    std::size_t slot = idx * per_instance;
    for (Algorithm a : config.algorithms) {
      for (double eps : config.epsilons) {
        RawRecord& rec = report.records[slot++];
        rec.algorithm = a;
        rec.epsilon = eps;
        rec.n_vertices = inst.n_vertices;
        rec.obstacles = config.presets[inst.preset_idx].obstacles;
        rec.env_seed = inst.world_seed;
        rec.query_idx = inst.query_idx;
        SearchOptions opts;
        opts.epsilon = eps;
        opts.lookahead = config.lookahead;
        try {
          if (config.timing_warmup) {
            EdgeEvaluator warm(world, rm);
            run_algorithm(a, rm, inst.query, warm, opts);
          }
          EdgeEvaluator evaluator(world, rm);
          const SearchResult res = run_algorithm(a, rm, inst.query, evaluator, opts);
          rec.status = res.status;
          rec.cost = res.cost;
          rec.edge_evals = res.counters.edge_evaluations;
          rec.vertex_expansions = res.counters.vertex_expansions;
          rec.queue_pushes = res.counters.queue_pushes;
          rec.queue_pops = res.counters.queue_pops;
          rec.time_ns = res.counters.wall_time_ns;
        } catch (const std::exception& ex) {
          rec.status = SearchStatus::NoSolution;
          rec.cost = kInfCost;
          std::cerr << "planner failure (" << algorithm_name(a) << ", N=" << inst.n_vertices
                    << ", preset=" << inst.preset_idx << ", env=" << inst.env_idx
                    << ", query=" << inst.query_idx << "): " << ex.what() << "\n";
        }
      }
    }
  };

  int jobs = config.jobs > 0 ? config.jobs
                             : static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;
  if (jobs == 1) {
    for (std::size_t i = 0; i < instances.size(); ++i) run_instance(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int t = 0; t < jobs; ++t) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= instances.size()) return;
          run_instance(i);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  report.rows = aggregate(report.records, {"algorithm", "epsilon", "N", "obstacles"});
  return report;
}

static std::string row_to_json(const AggregateRow& r) {
  std::string out = "{\"algorithm\":\"" + r.algorithm + "\"";
  out += ",\"epsilon\":" + io::fmt_g17(r.epsilon);
  out += ",\"N\":" + std::to_string(r.n_vertices);
  out += ",\"obstacles\":" + std::to_string(r.obstacles);
  out += ",\"count\":" + std::to_string(r.count);
  out += ",\"solved\":" + std::to_string(r.solved);
  out += ",\"no_solution\":" + std::to_string(r.no_solution);
  const auto stat = [&out](const char* name, double mean, double median, double stddev) {
    out += std::string(",\"") + name + "\":{\"mean\":" + io::fmt_g17(mean);
    out += ",\"median\":" + io::fmt_g17(median);
    out += ",\"stddev\":" + io::fmt_g17(stddev) + "}";
  };
  stat("cost", r.mean_cost, r.median_cost, r.stddev_cost);
  stat("time_s", r.mean_time_s, r.median_time_s, r.stddev_time_s);
  stat("edge_evals", r.mean_edge_evals, r.median_edge_evals, r.stddev_edge_evals);
  stat("expansions", r.mean_expansions, r.median_expansions, r.stddev_expansions);
  out += "}";
  return out;
}

std::string report_to_json(const BenchmarkReport& report) {
  std::string out = "{\"config\":" + config_to_json(report.config);
  out += ",\"rows\":[";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    if (i) out += ',';
    out += row_to_json(report.rows[i]);
  }
  out += "]}\n";
  return out;
}

namespace {

AggregateRow row_from_json(const json& j) {
  AggregateRow r;
  r.algorithm = j.at("algorithm").get<std::string>();
  r.epsilon = j.at("epsilon").get<double>();
  r.n_vertices = j.at("N").get<std::int64_t>();
  r.obstacles = j.at("obstacles").get<int>();
  r.count = j.at("count").get<std::int64_t>();
  r.solved = j.at("solved").get<std::int64_t>();
  r.no_solution = j.at("no_solution").get<std::int64_t>();
  const auto stat = [&j](const char* name, double& mean, double& median, double& stddev) {
    const json& js = j.at(name);
    mean = js.at("mean").get<double>();
    median = js.at("median").get<double>();
    stddev = js.at("stddev").get<double>();
  };
  stat("cost", r.mean_cost, r.median_cost, r.stddev_cost);
  stat("time_s", r.mean_time_s, r.median_time_s, r.stddev_time_s);
  stat("edge_evals", r.mean_edge_evals, r.median_edge_evals, r.stddev_edge_evals);
  stat("expansions", r.mean_expansions, r.median_expansions, r.stddev_expansions);
  return r;
}

bool rows_equal(const AggregateRow& a, const AggregateRow& b) {
  return a.algorithm == b.algorithm && a.epsilon == b.epsilon &&
         a.n_vertices == b.n_vertices && a.obstacles == b.obstacles && a.count == b.count &&
         a.solved == b.solved && a.no_solution == b.no_solution &&
         a.mean_cost == b.mean_cost && a.median_cost == b.median_cost &&
         a.stddev_cost == b.stddev_cost && a.mean_time_s == b.mean_time_s &&
         a.median_time_s == b.median_time_s && a.stddev_time_s == b.stddev_time_s &&
         a.mean_edge_evals == b.mean_edge_evals && a.median_edge_evals == b.median_edge_evals &&
         a.stddev_edge_evals == b.stddev_edge_evals && a.mean_expansions == b.mean_expansions &&
         a.median_expansions == b.median_expansions &&
         a.stddev_expansions == b.stddev_expansions;
}

}  // namespace

BenchmarkReport load_report(const std::string& report_path, const std::string& csv_path) {
  const json j = json::parse(io::read_file(report_path));
  BenchmarkReport report;
  report.config = config_from_json_obj(j.at("config"));
  for (const json& jr : j.at("rows")) report.rows.push_back(row_from_json(jr));
  report.records = records_from_csv(io::read_file(csv_path));

  const auto recomputed =
      aggregate(report.records, {"algorithm", "epsilon", "N", "obstacles"});
  if (recomputed.size() != report.rows.size())
    throw std::runtime_error("report self-check: row count mismatch");
  for (std::size_t i = 0; i < recomputed.size(); ++i)
    if (!rows_equal(recomputed[i], report.rows[i]))
      throw std::runtime_error("report self-check: aggregate mismatch at row " +
                               std::to_string(i));
  return report;
}

TrendReport trend_report(const std::vector<RawRecord>& records) {
  std::vector<double> epsilons;
  for (const RawRecord& r : records)
    if (std::find(epsilons.begin(), epsilons.end(), r.epsilon) == epsilons.end())
      epsilons.push_back(r.epsilon);
  if (epsilons.size() < 2)
    throw std::invalid_argument("trend_report: needs records for at least two epsilons");
  std::sort(epsilons.begin(), epsilons.end());
  if (epsilons.front() != 1.0)
    throw std::invalid_argument("trend_report: needs epsilon=1 baseline records");

  const auto rows = aggregate(records, {"algorithm", "epsilon"});
  const auto find_row = [&rows](const std::string& alg, double eps) -> const AggregateRow* {
    for (const AggregateRow& r : rows)
      if (r.algorithm == alg && r.epsilon == eps) return &r;
    return nullptr;
  };

  std::vector<std::string> algs;
  for (const AggregateRow& r : rows)
    if (std::find(algs.begin(), algs.end(), r.algorithm) == algs.end())
      algs.push_back(r.algorithm);

  TrendReport out;
  for (const std::string& alg : algs) {
    const AggregateRow* base = find_row(alg, 1.0);
    if (!base) continue;
    for (double eps : epsilons) {
      const AggregateRow* row = find_row(alg, eps);
      if (!row) continue;
      TrendEntry e;
      e.algorithm = alg;
      e.epsilon = eps;
      e.time_vs_eps1 = base->mean_time_s > 0 ? row->mean_time_s / base->mean_time_s : 1.0;
      e.cost_vs_eps1 = base->mean_cost > 0 ? row->mean_cost / base->mean_cost : 1.0;
      out.entries.push_back(std::move(e));
    }
  }
  for (double eps : epsilons) {
    const AggregateRow* lea = find_row("lea", eps);
    const AggregateRow* lsp = find_row("lazysp", eps);
    if (lea && lsp && lsp->mean_edge_evals > 0)
      out.lea_over_lazysp.emplace_back(eps, lea->mean_edge_evals / lsp->mean_edge_evals);
  }
  return out;
}

void print_tables(const BenchmarkReport& report, std::ostream& out) {
  std::vector<std::pair<std::int64_t, int>> cols;
  std::vector<std::pair<std::string, double>> planner_rows;
  for (const AggregateRow& r : report.rows) {
    const std::pair<std::int64_t, int> col{r.n_vertices, r.obstacles};
    if (std::find(cols.begin(), cols.end(), col) == cols.end()) cols.push_back(col);
    const std::pair<std::string, double> pr{r.algorithm, r.epsilon};
    if (std::find(planner_rows.begin(), planner_rows.end(), pr) == planner_rows.end())
      planner_rows.push_back(pr);
  }
  std::sort(cols.begin(), cols.end());

  const auto cell = [&report](const std::string& alg, double eps, std::int64_t n,
                              int obs) -> const AggregateRow* {
    for (const AggregateRow& r : report.rows)
      if (r.algorithm == alg && r.epsilon == eps && r.n_vertices == n && r.obstacles == obs)
        return &r;
    return nullptr;
  };

  const auto emit = [&](const char* title, auto metric, int precision) {
    out << title << "\n";
    out << "  " << std::string(18, ' ');
    char buf[64];
    for (const auto& [n, o] : cols) {
      std::snprintf(buf, sizeof(buf), "N=%lld o=%d", static_cast<long long>(n), o);
      out << std::string(std::max(0, 14 - static_cast<int>(std::strlen(buf))), ' ') << buf;
    }
    out << "\n";
    for (const auto& [alg, eps] : planner_rows) {
      std::snprintf(buf, sizeof(buf), "%s (eps=%g)", alg.c_str(), eps);
      out << "  " << buf << std::string(std::max(0, 18 - static_cast<int>(std::strlen(buf))), ' ');
      for (const auto& [n, o] : cols) {
        const AggregateRow* r = cell(alg, eps, n, o);
        if (r)
          std::snprintf(buf, sizeof(buf), "%14.*f", precision, metric(*r));
        else
          std::snprintf(buf, sizeof(buf), "%14s", "-");
        out << buf;
      }
      out << "\n";
    }
    out << "\n";
  };

  emit("Avg. time (s)", [](const AggregateRow& r) { return r.mean_time_s; }, 4);
  emit("Edge evaluations (mean)", [](const AggregateRow& r) { return r.mean_edge_evals; }, 2);
  emit("Path cost (mean over solved)", [](const AggregateRow& r) { return r.mean_cost; }, 4);
}

}  // namespace lazyplan
