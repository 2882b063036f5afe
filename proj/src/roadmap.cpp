#include "lazyplan/roadmap.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lazyplan/rng.hpp"

namespace lazyplan {
namespace {

// Fills CSR arrays from per-vertex neighbor lists, sorting each list by id.
void finalize_adjacency(Roadmap& rm,
                        std::vector<std::vector<std::pair<VertexId, double>>>& adj) {
  const VertexId n = static_cast<VertexId>(adj.size());
  rm.offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  std::int64_t total = 0;
  for (VertexId v = 0; v < n; ++v) {
    std::sort(adj[v].begin(), adj[v].end());
    total += static_cast<std::int64_t>(adj[v].size());
    rm.offsets[v + 1] = total;
  }
  rm.neighbors.resize(static_cast<std::size_t>(total));
  rm.weights.resize(static_cast<std::size_t>(total));
  std::int64_t at = 0;
  rm.isolated_vertices = 0;
  for (VertexId v = 0; v < n; ++v) {
    if (adj[v].empty()) ++rm.isolated_vertices;
    for (auto& [nb, w] : adj[v]) {
      rm.neighbors[at] = nb;
      rm.weights[at] = w;
      ++at;
    }
  }
}

// Brute-force pairwise connection; reference path for small or high-dim inputs.
void connect_brute_force(const Eigen::MatrixXd& pts, double radius,
                         std::vector<std::vector<std::pair<VertexId, double>>>& adj) {
  const VertexId n = static_cast<VertexId>(pts.rows());
  for (VertexId i = 0; i < n; ++i) {
    for (VertexId j = i + 1; j < n; ++j) {
      const double dist = (pts.row(i) - pts.row(j)).norm();
      if (dist > 0.0 && dist <= radius) {
        adj[i].emplace_back(j, dist);
        adj[j].emplace_back(i, dist);
      }
    }
  }
}

// Uniform-grid neighbor search with cell edge = radius. Vertices are
// bucketed by integer cell coordinates; candidates come from the 3^d
// surrounding cells. The final distance check is identical to the
// brute-force path, so both produce the same edge set.
void connect_grid(const Eigen::MatrixXd& pts, double radius,
                  std::vector<std::vector<std::pair<VertexId, double>>>& adj) {
  const VertexId n = static_cast<VertexId>(pts.rows());
  const int d = static_cast<int>(pts.cols());
  const Eigen::VectorXd origin = pts.colwise().minCoeff().transpose();

  std::vector<std::vector<std::int32_t>> cell_of(n, std::vector<std::int32_t>(d));
  for (VertexId v = 0; v < n; ++v)
    for (int k = 0; k < d; ++k)
      cell_of[v][k] = static_cast<std::int32_t>(std::floor((pts(v, k) - origin[k]) / radius));

  std::vector<VertexId> order(n);
  for (VertexId v = 0; v < n; ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    return cell_of[a] != cell_of[b] ? cell_of[a] < cell_of[b] : a < b;
  });

  // Unique cells with their [begin, end) ranges in `order`.
  std::vector<std::vector<std::int32_t>> cells;
  std::vector<std::pair<std::int64_t, std::int64_t>> ranges;
  for (std::int64_t i = 0; i < n;) {
    std::int64_t j = i;
    while (j < n && cell_of[order[j]] == cell_of[order[i]]) ++j;
    cells.push_back(cell_of[order[i]]);
    ranges.emplace_back(i, j);
    i = j;
  }

  const auto find_cell = [&](const std::vector<std::int32_t>& key) -> std::int64_t {
    auto it = std::lower_bound(cells.begin(), cells.end(), key);
    if (it == cells.end() || *it != key) return -1;
    return it - cells.begin();
  };

  std::vector<std::int32_t> probe(d);
  std::vector<int> delta(d, -1);
  for (VertexId v = 0; v < n; ++v) {
    // Enumerate the 3^d neighborhood in odometer order.
    std::fill(delta.begin(), delta.end(), -1);
    while (true) {
      for (int k = 0; k < d; ++k) probe[k] = cell_of[v][k] + delta[k];
      const std::int64_t c = find_cell(probe);
      if (c >= 0) {
        for (std::int64_t i = ranges[c].first; i < ranges[c].second; ++i) {
          const VertexId u = order[i];
          if (u <= v) continue;  // each unordered pair once
          const double dist = (pts.row(v) - pts.row(u)).norm();
          if (dist > 0.0 && dist <= radius) {
            adj[v].emplace_back(u, dist);
            adj[u].emplace_back(v, dist);
          }
        }
      }
      int k = 0;
      while (k < d && delta[k] == 1) delta[k++] = -1;
      if (k == d) break;
      ++delta[k];
    }
  }
}

}  // namespace

double connection_radius(std::int64_t n_vertices, int dim, double gamma) {
  if (n_vertices < 2) throw std::invalid_argument("connection_radius: N must be >= 2");
  const double n = static_cast<double>(n_vertices);
  return gamma * std::pow(std::log(n) / n, 1.0 / static_cast<double>(dim));
}

double unit_ball_volume(int dim) {
  const double half = static_cast<double>(dim) / 2.0;
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

double prm_star_gamma(const WorldBounds& bounds) {
  const double d = static_cast<double>(bounds.dim());
  return 2.0 * std::pow(1.0 + 1.0 / d, 1.0 / d) *
         std::pow(bounds.volume() / unit_ball_volume(bounds.dim()), 1.0 / d);
}

Roadmap connect_r_disk(Eigen::MatrixXd vertices, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("connect_r_disk: radius must be > 0");
  Roadmap rm;
  rm.vertices = std::move(vertices);
  rm.radius = radius;
  const VertexId n = rm.size();
  std::vector<std::vector<std::pair<VertexId, double>>> adj(n);
  if (n >= 512 && rm.dim() <= 8)
    connect_grid(rm.vertices, radius, adj);
  else
    connect_brute_force(rm.vertices, radius, adj);
  finalize_adjacency(rm, adj);
  return rm;
}

Roadmap make_roadmap(Eigen::MatrixXd vertices,
                     const std::vector<std::pair<VertexId, VertexId>>& edges) {
  Roadmap rm;
  rm.vertices = std::move(vertices);
  const VertexId n = rm.size();
  std::vector<std::vector<std::pair<VertexId, double>>> adj(n);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("make_roadmap: vertex id out of range");
    if (u == v) throw std::invalid_argument("make_roadmap: self-loop");
    const double dist = (rm.vertices.row(u) - rm.vertices.row(v)).norm();
    adj[u].emplace_back(v, dist);
    adj[v].emplace_back(u, dist);
  }
  finalize_adjacency(rm, adj);
  return rm;
}

Roadmap build_roadmap(const WorldBounds& bounds, std::int64_t n_vertices,
                      double gamma, std::uint64_t seed) {
  if (n_vertices < 2) throw std::invalid_argument("build_roadmap: N must be >= 2");
  const int d = bounds.dim();
  if (gamma <= 0.0) gamma = prm_star_gamma(bounds);

  SplitMix64 rng(seed);
  Eigen::MatrixXd pts(n_vertices, d);
  for (std::int64_t v = 0; v < n_vertices; ++v)
    for (int k = 0; k < d; ++k) pts(v, k) = rng.uniform(bounds.lo[k], bounds.hi[k]);

  Roadmap rm = connect_r_disk(std::move(pts), connection_radius(n_vertices, d, gamma));
  rm.gamma = gamma;
  rm.seed = seed;
  return rm;
}

std::pair<Roadmap, Query> attach_query(const Roadmap& roadmap,
                                       const WorldBounds& bounds,
                                       const Point& start_point,
                                       const Point& goal_point) {
  if (!bounds.contains(start_point)) throw std::invalid_argument("attach_query: start out of bounds");
  if (!bounds.contains(goal_point)) throw std::invalid_argument("attach_query: goal out of bounds");
  const VertexId n = roadmap.size();

  Roadmap out;
  out.radius = roadmap.radius;
  out.gamma = roadmap.gamma;
  out.seed = roadmap.seed;
  out.vertices.resize(n + 2, roadmap.dim());
  out.vertices.topRows(n) = roadmap.vertices;
  out.vertices.row(n) = start_point.transpose();
  out.vertices.row(n + 1) = goal_point.transpose();

  std::vector<std::vector<std::pair<VertexId, double>>> extra(2);
  for (VertexId which = 0; which < 2; ++which) {
    const VertexId id = n + which;
    for (VertexId u = 0; u < n + 2; ++u) {
      if (u == id || (which == 1 && u == n)) continue;  // start-goal pair handled once
      const double dist = (out.vertices.row(id) - out.vertices.row(u)).norm();
      if (dist > 0.0 && dist <= roadmap.radius) extra[which].emplace_back(u, dist);
    }
  }
  // Mirror the start-goal edge if present.
  for (auto& [u, w] : extra[0])
    if (u == n + 1) extra[1].emplace_back(n, w);

  out.offsets.assign(static_cast<std::size_t>(n) + 3, 0);
  std::vector<std::int64_t> add(n, 0);
  for (int which = 0; which < 2; ++which)
    for (auto& [u, w] : extra[which])
      if (u < n) ++add[u];
  for (VertexId v = 0; v < n; ++v)
    out.offsets[v + 1] = out.offsets[v] + roadmap.degree(v) + add[v];
  out.offsets[n + 1] = out.offsets[n] + static_cast<std::int64_t>(extra[0].size());
  out.offsets[n + 2] = out.offsets[n + 1] + static_cast<std::int64_t>(extra[1].size());

  out.neighbors.resize(static_cast<std::size_t>(out.offsets[n + 2]));
  out.weights.resize(out.neighbors.size());
  for (VertexId v = 0; v < n; ++v) {
    std::int64_t at = out.offsets[v];
    for (std::int64_t i = roadmap.offsets[v]; i < roadmap.offsets[v + 1]; ++i, ++at) {
      out.neighbors[at] = roadmap.neighbors[i];
      out.weights[at] = roadmap.weights[i];
    }
    for (int which = 0; which < 2; ++which) {
      for (auto& [u, w] : extra[which]) {
        if (u == v) {
          out.neighbors[at] = n + which;
          out.weights[at] = w;
          ++at;
        }
      }
    }
  }
  for (int which = 0; which < 2; ++which) {
    std::sort(extra[which].begin(), extra[which].end());
    std::int64_t at = out.offsets[n + which];
    for (auto& [u, w] : extra[which]) {
      out.neighbors[at] = u;
      out.weights[at] = w;
      ++at;
    }
  }

  out.isolated_vertices = 0;
  for (VertexId v = 0; v < n + 2; ++v)
    if (out.degree(v) == 0) ++out.isolated_vertices;

  if (out.degree(n) == 0) throw std::runtime_error("attach_query: start vertex is isolated");
  if (out.degree(n + 1) == 0) throw std::runtime_error("attach_query: goal vertex is isolated");
  return {std::move(out), Query{n, static_cast<VertexId>(n + 1)}};
}

}  // namespace lazyplan
