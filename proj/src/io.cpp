#include "lazyplan/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace lazyplan::io {

static_assert(std::endian::native == std::endian::little,
              "binary roadmap format is defined little-endian");

namespace {

using nlohmann::json;

void append_vector(std::string& out, const Eigen::VectorXd& v) {
  out += '[';
  for (int i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += fmt_g17(v[i]);
  }
  out += ']';
}

Eigen::VectorXd vector_from_json(const json& j) {
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = j.at(i).get<double>();
  return v;
}

template <typename T>
void append_raw(std::string& out, const T& value) {
  out.append(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_raw(const std::string& bytes, std::size_t& at) {
  if (at + sizeof(T) > bytes.size()) throw std::runtime_error("roadmap binary: truncated");
  T value;
  std::memcpy(&value, bytes.data() + at, sizeof(T));
  at += sizeof(T);
  return value;
}

constexpr char kRoadmapMagic[8] = {'L', 'P', 'R', 'M', '0', '0', '0', '1'};

}  // namespace

std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string world_to_json(const World& world) {
  std::string out = "{\"dim\":" + std::to_string(world.bounds.dim());
  out += ",\"lo\":";
  append_vector(out, world.bounds.lo);
  out += ",\"hi\":";
  append_vector(out, world.bounds.hi);
  out += ",\"seed\":" + std::to_string(world.seed);
  out += ",\"obstacles\":[";
  for (std::size_t i = 0; i < world.obstacles.size(); ++i) {
    if (i) out += ',';
    out += "{\"min\":";
    append_vector(out, world.obstacles[i].min_corner);
    out += ",\"max\":";
    append_vector(out, world.obstacles[i].max_corner);
    out += '}';
  }
  out += "]}\n";
  return out;
}

World world_from_json(const std::string& text) {
  const json j = json::parse(text);
  World world;
  world.bounds = WorldBounds::make(vector_from_json(j.at("lo")), vector_from_json(j.at("hi")));
  if (j.at("dim").get<int>() != world.bounds.dim())
    throw std::runtime_error("world json: dim disagrees with lo/hi length");
  world.seed = j.at("seed").get<std::uint64_t>();
  for (const json& jo : j.at("obstacles")) {
    BoxObstacle box{vector_from_json(jo.at("min")), vector_from_json(jo.at("max"))};
    if (box.min_corner.size() != world.bounds.dim() ||
        box.max_corner.size() != world.bounds.dim())
      throw std::runtime_error("world json: obstacle dim mismatch");
    if (!(box.min_corner.array() <= box.max_corner.array()).all())
      throw std::runtime_error("world json: obstacle min > max");
    world.obstacles.push_back(std::move(box));
  }
  return world;
}

std::string roadmap_to_json(const Roadmap& rm) {
  std::string out = "{\"dim\":" + std::to_string(rm.dim());
  out += ",\"n\":" + std::to_string(rm.size());
  out += ",\"radius\":" + fmt_g17(rm.radius);
  out += ",\"gamma\":" + fmt_g17(rm.gamma);
  out += ",\"seed\":" + std::to_string(rm.seed);
  out += ",\"vertices\":[";
  for (VertexId v = 0; v < rm.size(); ++v) {
    if (v) out += ',';
    out += '[';
    for (int k = 0; k < rm.dim(); ++k) {
      if (k) out += ',';
      out += fmt_g17(rm.vertices(v, k));
    }
    out += ']';
  }
  out += "],\"offsets\":[";
  for (std::size_t i = 0; i < rm.offsets.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(rm.offsets[i]);
  }
  out += "],\"neighbors\":[";
  for (std::size_t i = 0; i < rm.neighbors.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(rm.neighbors[i]);
  }
  out += "],\"weights\":[";
  for (std::size_t i = 0; i < rm.weights.size(); ++i) {
    if (i) out += ',';
    out += fmt_g17(rm.weights[i]);
  }
  out += "]}\n";
  return out;
}

namespace {

void validate_roadmap(const Roadmap& rm) {
  const VertexId n = rm.size();
  if (rm.offsets.size() != static_cast<std::size_t>(n) + 1 || rm.offsets[0] != 0 ||
      rm.offsets[n] != static_cast<std::int64_t>(rm.neighbors.size()) ||
      rm.neighbors.size() != rm.weights.size())
    throw std::runtime_error("roadmap: inconsistent CSR arrays");
  for (VertexId v = 0; v < n; ++v) {
    if (rm.offsets[v] > rm.offsets[v + 1]) throw std::runtime_error("roadmap: bad offsets");
    for (std::int64_t i = rm.offsets[v]; i < rm.offsets[v + 1]; ++i) {
      if (rm.neighbors[i] < 0 || rm.neighbors[i] >= n)
        throw std::runtime_error("roadmap: neighbor id out of range");
      if (rm.neighbors[i] == v) throw std::runtime_error("roadmap: self-loop");
      if (i > rm.offsets[v] && rm.neighbors[i] <= rm.neighbors[i - 1])
        throw std::runtime_error("roadmap: neighbor list not strictly sorted");
    }
  }
}

}  // namespace

Roadmap roadmap_from_json(const std::string& text) {
  const json j = json::parse(text);
  Roadmap rm;
  const int dim = j.at("dim").get<int>();
  const std::int64_t n = j.at("n").get<std::int64_t>();
  rm.radius = j.at("radius").get<double>();
  rm.gamma = j.at("gamma").get<double>();
  rm.seed = j.at("seed").get<std::uint64_t>();
  const json& jv = j.at("vertices");
  if (static_cast<std::int64_t>(jv.size()) != n)
    throw std::runtime_error("roadmap json: vertex count disagrees with n");
  rm.vertices.resize(n, dim);
  for (std::int64_t v = 0; v < n; ++v) {
    if (static_cast<int>(jv.at(v).size()) != dim)
      throw std::runtime_error("roadmap json: vertex dim mismatch");
    for (int k = 0; k < dim; ++k) rm.vertices(v, k) = jv.at(v).at(k).get<double>();
  }
  rm.offsets = j.at("offsets").get<std::vector<std::int64_t>>();
  rm.neighbors = j.at("neighbors").get<std::vector<VertexId>>();
  rm.weights = j.at("weights").get<std::vector<double>>();
  validate_roadmap(rm);
  for (VertexId v = 0; v < rm.size(); ++v)
    if (rm.degree(v) == 0) ++rm.isolated_vertices;
  return rm;
}

std::string roadmap_to_binary(const Roadmap& rm) {
  std::string out(kRoadmapMagic, sizeof(kRoadmapMagic));
  append_raw(out, static_cast<std::uint32_t>(rm.dim()));
  append_raw(out, static_cast<std::uint64_t>(rm.size()));
  append_raw(out, rm.radius);
  append_raw(out, rm.gamma);
  append_raw(out, rm.seed);
  for (VertexId v = 0; v < rm.size(); ++v)
    for (int k = 0; k < rm.dim(); ++k) append_raw(out, rm.vertices(v, k));
  append_raw(out, static_cast<std::uint64_t>(rm.neighbors.size()));
  for (std::int64_t off : rm.offsets) append_raw(out, static_cast<std::uint64_t>(off));
  for (VertexId nb : rm.neighbors) append_raw(out, static_cast<std::int32_t>(nb));
  for (double w : rm.weights) append_raw(out, w);
  return out;
}

Roadmap roadmap_from_binary(const std::string& bytes) {
  if (bytes.size() < sizeof(kRoadmapMagic) ||
      std::memcmp(bytes.data(), kRoadmapMagic, sizeof(kRoadmapMagic)) != 0)
    throw std::runtime_error("roadmap binary: bad magic");
  std::size_t at = sizeof(kRoadmapMagic);
  Roadmap rm;
  const auto dim = read_raw<std::uint32_t>(bytes, at);
  const auto n = read_raw<std::uint64_t>(bytes, at);
  rm.radius = read_raw<double>(bytes, at);
  rm.gamma = read_raw<double>(bytes, at);
  rm.seed = read_raw<std::uint64_t>(bytes, at);
  rm.vertices.resize(n, dim);
  for (std::uint64_t v = 0; v < n; ++v)
    for (std::uint32_t k = 0; k < dim; ++k) rm.vertices(v, k) = read_raw<double>(bytes, at);
  const auto m = read_raw<std::uint64_t>(bytes, at);
  rm.offsets.resize(n + 1);
  for (auto& off : rm.offsets) off = static_cast<std::int64_t>(read_raw<std::uint64_t>(bytes, at));
  rm.neighbors.resize(m);
  for (auto& nb : rm.neighbors) nb = read_raw<std::int32_t>(bytes, at);
  rm.weights.resize(m);
  for (auto& w : rm.weights) w = read_raw<double>(bytes, at);
  if (at != bytes.size()) throw std::runtime_error("roadmap binary: trailing bytes");
  validate_roadmap(rm);
  for (VertexId v = 0; v < rm.size(); ++v)
    if (rm.degree(v) == 0) ++rm.isolated_vertices;
  return rm;
}

std::string result_to_json(const SearchResult& res, std::uint64_t world_seed,
                           std::uint64_t graph_seed) {
  std::string out = "{\"algorithm\":\"";
  out += algorithm_name(res.algorithm);
  out += "\",\"epsilon\":" + fmt_g17(res.epsilon);
  out += ",\"status\":\"";
  out += res.solved() ? "Solved" : "NoSolution";
  out += "\",\"cost\":";
  out += res.cost == kInfCost ? "\"inf\"" : fmt_g17(res.cost);
  out += ",\"path\":[";
  for (std::size_t i = 0; i < res.path.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(res.path[i]);
  }
  out += "],\"counters\":{";
  out += "\"edge_evaluations\":" + std::to_string(res.counters.edge_evaluations);
  out += ",\"vertex_expansions\":" + std::to_string(res.counters.vertex_expansions);
  out += ",\"queue_pushes\":" + std::to_string(res.counters.queue_pushes);
  out += ",\"queue_pops\":" + std::to_string(res.counters.queue_pops);
  out += ",\"wall_time_ns\":" + std::to_string(res.counters.wall_time_ns);
  out += "},\"seeds\":{\"world\":" + std::to_string(world_seed);
  out += ",\"graph\":" + std::to_string(graph_seed);
  out += "}}\n";
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("rename failed: " + path);
}

void save_world(const World& world, const std::string& path) {
  write_file_atomic(path, world_to_json(world));
}

World load_world(const std::string& path) { return world_from_json(read_file(path)); }

void save_roadmap(const Roadmap& rm, const std::string& path) {
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".bin") == 0)
    write_file_atomic(path, roadmap_to_binary(rm));
  else
    write_file_atomic(path, roadmap_to_json(rm));
}

Roadmap load_roadmap(const std::string& path) {
  const std::string bytes = read_file(path);
  if (bytes.size() >= sizeof(kRoadmapMagic) &&
      std::memcmp(bytes.data(), kRoadmapMagic, sizeof(kRoadmapMagic)) == 0)
    return roadmap_from_binary(bytes);
  return roadmap_from_json(bytes);
}

}  // namespace lazyplan::io
