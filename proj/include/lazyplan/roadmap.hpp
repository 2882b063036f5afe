#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "lazyplan/world.hpp"

namespace lazyplan {

using VertexId = std::int32_t;

// Undirected r-disk roadmap over sampled vertices. Edge weights are the
// estimated costs w-hat (Euclidean endpoint distance); the graph is
// built without ever touching a World, so one roadmap serves any
// environment with the same bounds. Immutable after construction.
struct Roadmap {
  Eigen::MatrixXd vertices;        // N x dim, one vertex per row
  std::vector<std::int64_t> offsets;  // CSR, size N+1
  std::vector<VertexId> neighbors;
  std::vector<double> weights;     // w-hat, parallel to neighbors
  double radius = 0.0;
  double gamma = 0.0;
  std::uint64_t seed = 0;
  std::int64_t isolated_vertices = 0;  // degree-0 count, reported not fatal

  VertexId size() const { return static_cast<VertexId>(vertices.rows()); }
  int dim() const { return static_cast<int>(vertices.cols()); }
  std::int64_t edge_count() const {  // undirected edges
    return static_cast<std::int64_t>(neighbors.size()) / 2;
  }
  std::int64_t degree(VertexId v) const { return offsets[v + 1] - offsets[v]; }
  Point point(VertexId v) const { return vertices.row(v).transpose(); }

  // CSR slot of the directed edge u -> v, or -1. Neighbor lists are
  // sorted by id, so this is a binary search.
  std::int64_t find_edge(VertexId u, VertexId v) const {
    const auto first = neighbors.begin() + offsets[u];
    const auto last = neighbors.begin() + offsets[u + 1];
    const auto it = std::lower_bound(first, last, v);
    if (it == last || *it != v) return -1;
    return it - neighbors.begin();
  }
};

// Start/goal pair over roadmap vertex ids; start != goal, both in range.
struct Query {
  VertexId start = -1;
  VertexId goal = -1;
};

// r(N) = gamma * (log N / N)^(1/dim), natural log. Strictly decreasing
// in N for N >= 2.
double connection_radius(std::int64_t n_vertices, int dim, double gamma);

// PRM* constant 2*(1+1/d)^(1/d) * (vol / zeta_d)^(1/d) with the free
// space volume taken as the full bounds volume (obstacles are unknown
// when the graph is built). zeta_d is the unit-ball volume.
double prm_star_gamma(const WorldBounds& bounds);

double unit_ball_volume(int dim);

// Connects every vertex pair with 0 < distance <= radius. Neighbor
// lists end up sorted by vertex id. Pure geometry, no collision checks.
Roadmap connect_r_disk(Eigen::MatrixXd vertices, double radius);

// Builds a roadmap from explicit vertices and an explicit undirected
// edge list; weights are recomputed as Euclidean distances.
Roadmap make_roadmap(Eigen::MatrixXd vertices,
                     const std::vector<std::pair<VertexId, VertexId>>& edges);

// Samples N vertices i.i.d. uniform in bounds via SplitMix64(seed),
// then applies the r-disk rule with radius connection_radius(N, dim,
// gamma). gamma <= 0 selects prm_star_gamma(bounds). Zero collision
// checks by construction.
Roadmap build_roadmap(const WorldBounds& bounds, std::int64_t n_vertices,
                      double gamma, std::uint64_t seed);

// Appends start/goal points as two new vertices (no deduplication) and
// connects each by the same r-disk rule. Throws std::invalid_argument
// if a point is out of bounds; throws std::runtime_error if either new
// vertex ends up isolated.
std::pair<Roadmap, Query> attach_query(const Roadmap& roadmap,
                                       const WorldBounds& bounds,
                                       const Point& start_point,
                                       const Point& goal_point);

}  // namespace lazyplan
