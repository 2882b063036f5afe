#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "lazyplan/io.hpp"
#include "lazyplan/rng.hpp"
#include "lazyplan/roadmap.hpp"
#include "lazyplan/search_core.hpp"

using namespace lazyplan;

namespace {

Eigen::MatrixXd two_points(double dist) {
  Eigen::MatrixXd m(2, 2);
  m << 0, 0, dist, 0;
  return m;
}

// O(N^2) reference construction for comparing edge sets.
std::set<std::pair<VertexId, VertexId>> brute_force_edges(const Eigen::MatrixXd& pts,
                                                          double radius) {
  std::set<std::pair<VertexId, VertexId>> edges;
  for (VertexId i = 0; i < pts.rows(); ++i)
    for (VertexId j = i + 1; j < pts.rows(); ++j) {
      const double d = (pts.row(i) - pts.row(j)).norm();
      if (d > 0.0 && d <= radius) edges.insert({i, j});
    }
  return edges;
}

std::set<std::pair<VertexId, VertexId>> roadmap_edges(const Roadmap& rm) {
  std::set<std::pair<VertexId, VertexId>> edges;
  for (VertexId v = 0; v < rm.size(); ++v)
    for (std::int64_t i = rm.offsets[v]; i < rm.offsets[v + 1]; ++i)
      if (rm.neighbors[i] > v) edges.insert({v, rm.neighbors[i]});
  return edges;
}

void check_roadmap_invariants(const Roadmap& rm) {
  for (VertexId v = 0; v < rm.size(); ++v) {
    VertexId prev = -1;
    for (std::int64_t i = rm.offsets[v]; i < rm.offsets[v + 1]; ++i) {
      const VertexId nb = rm.neighbors[i];
      CHECK(nb != v);        // no self-loops
      CHECK(nb > prev);      // sorted, no duplicates
      prev = nb;
      // undirected symmetry with equal weight
      const std::int64_t rev = rm.find_edge(nb, v);
      REQUIRE(rev >= 0);
      CHECK(rm.weights[rev] == rm.weights[i]);
      // w-hat is the Euclidean endpoint distance
      CHECK(rm.weights[i] ==
            doctest::Approx((rm.vertices.row(v) - rm.vertices.row(nb)).norm())
                .epsilon(1e-15));
    }
  }
}

}  // namespace

TEST_CASE("connection_radius: closed forms") {
  // N = e makes log N / N = 1/e.
  const double e = std::exp(1.0);
  CHECK(connection_radius(3, 1, 1.0) == doctest::Approx(std::log(3.0) / 3.0));
  CHECK(std::pow(1.0 / e, 1.0) == doctest::Approx(0.36787944117144233));
  // frozen from an independent high-precision evaluation
  CHECK(connection_radius(1000, 2, 1.0) ==
        doctest::Approx(0.083112906813455496).epsilon(1e-12));
}

TEST_CASE("connection_radius: strictly decreasing in N") {
  for (int dim : {2, 3, 7}) {
    double prev = connection_radius(200, dim, 1.7);
    for (std::int64_t n : {500, 1000, 5000, 20000}) {
      const double r = connection_radius(n, dim, 1.7);
      CHECK(r < prev);
      prev = r;
    }
  }
  CHECK(connection_radius(20000, 2, 2.5) < connection_radius(200, 2, 2.5));
  CHECK_THROWS_AS(connection_radius(1, 2, 1.0), std::invalid_argument);
}

TEST_CASE("prm_star_gamma matches the closed form in 2D") {
  // 2 * (1 + 1/2)^(1/2) * (1/pi)^(1/2)
  const double expected = 2.0 * std::sqrt(1.5) * std::sqrt(1.0 / M_PI);
  CHECK(prm_star_gamma(WorldBounds::unit_cube(2)) == doctest::Approx(expected).epsilon(1e-15));
  CHECK(unit_ball_volume(2) == doctest::Approx(M_PI).epsilon(1e-15));
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 / 3.0 * M_PI).epsilon(1e-14));
}

TEST_CASE("connect_r_disk: two vertices far apart stay disconnected") {
  const Roadmap rm = connect_r_disk(two_points(5.0), 1.0);
  CHECK(rm.edge_count() == 0);
  CHECK(rm.isolated_vertices == 2);
}

TEST_CASE("connect_r_disk: two vertices within radius get one edge") {
  const Roadmap rm = connect_r_disk(two_points(0.5), 1.0);
  CHECK(rm.edge_count() == 1);
  CHECK(rm.weights[0] == doctest::Approx(0.5).epsilon(1e-15));
  const std::int64_t fwd = rm.find_edge(0, 1);
  const std::int64_t rev = rm.find_edge(1, 0);
  CHECK(fwd >= 0);
  CHECK(rev >= 0);
  CHECK(rm.weights[fwd] == rm.weights[rev]);
}

TEST_CASE("connect_r_disk: coincident vertices are not connected") {
  const Roadmap rm = connect_r_disk(two_points(0.0), 1.0);
  CHECK(rm.edge_count() == 0);
}

TEST_CASE("build_roadmap matches the quadratic reference construction") {
  const WorldBounds bounds = WorldBounds::unit_cube(2);
  const Roadmap rm = build_roadmap(bounds, 200, 0.0, 31337);
  CHECK(rm.size() == 200);
  CHECK(roadmap_edges(rm) == brute_force_edges(rm.vertices, rm.radius));
  check_roadmap_invariants(rm);
}

TEST_CASE("grid and brute-force construction agree above the grid cutoff") {
  const WorldBounds bounds = WorldBounds::unit_cube(2);
  // N = 600 goes through the grid path; compare against brute force.
  const Roadmap rm = build_roadmap(bounds, 600, 0.0, 5150);
  CHECK(roadmap_edges(rm) == brute_force_edges(rm.vertices, rm.radius));
  check_roadmap_invariants(rm);
}

TEST_CASE("build_roadmap: deterministic per seed") {
  const WorldBounds bounds = WorldBounds::unit_cube(2);
  const Roadmap a = build_roadmap(bounds, 300, 0.0, 99);
  const Roadmap b = build_roadmap(bounds, 300, 0.0, 99);
  CHECK(io::roadmap_to_json(a) == io::roadmap_to_json(b));
  CHECK(io::roadmap_to_binary(a) == io::roadmap_to_binary(b));
}

TEST_CASE("build_roadmap: vertices inside bounds, 3D") {
  const WorldBounds bounds = WorldBounds::make(Eigen::Vector3d(-1, 0, 2),
                                               Eigen::Vector3d(1, 4, 3));
  const Roadmap rm = build_roadmap(bounds, 400, 0.0, 12);
  for (VertexId v = 0; v < rm.size(); ++v) CHECK(bounds.contains(rm.point(v)));
  check_roadmap_invariants(rm);
}

TEST_CASE("build_roadmap flags isolated vertices without failing") {
  // Tiny radius: nothing connects.
  const Roadmap rm = build_roadmap(WorldBounds::unit_cube(2), 50, 1e-6, 4);
  CHECK(rm.edge_count() == 0);
  CHECK(rm.isolated_vertices == 50);
}

TEST_CASE("construction performs zero edge evaluations") {
  const WorldBounds bounds = WorldBounds::unit_cube(2);
  const World world = sample_world(bounds, 8, 0.05, 0.25, 5);
  Roadmap rm = build_roadmap(bounds, 300, 0.0, 6);
  Point s(2), g(2);
  s << 0.05, 0.05;
  g << 0.95, 0.95;
  auto [attached, query] = attach_query(rm, bounds, s, g);
  EdgeEvaluator evaluator(world, attached);
  CHECK(evaluator.eval_count() == 0);
}

TEST_CASE("attach_query basics") {
  const WorldBounds bounds = WorldBounds::unit_cube(2);
  const Roadmap rm = build_roadmap(bounds, 1000, 0.0, 21);

  SUBCASE("opposite corners of a dense roadmap attach with degree >= 1") {
    Point s(2), g(2);
    s << 0.01, 0.01;
    g << 0.99, 0.99;
    const auto [attached, query] = attach_query(rm, bounds, s, g);
    CHECK(attached.size() == rm.size() + 2);
    CHECK(query.start == rm.size());
    CHECK(query.goal == rm.size() + 1);
    CHECK(attached.degree(query.start) >= 1);
    CHECK(attached.degree(query.goal) >= 1);
    check_roadmap_invariants(attached);
  }

  SUBCASE("a point equal to an existing vertex is appended, not deduplicated") {
    const Point s = rm.point(0);
    Point g(2);
    g << 0.5, 0.5;
    const auto [attached, query] = attach_query(rm, bounds, s, g);
    CHECK(attached.size() == rm.size() + 2);
    // coincident with vertex 0, so no edge to it, but neighbors of 0 are in range
    CHECK(attached.find_edge(query.start, 0) == -1);
    CHECK(attached.degree(query.start) >= 1);
  }

  SUBCASE("goal outside bounds is rejected") {
    Point s(2), g(2);
    s << 0.5, 0.5;
    g << 1.5, 0.5;
    CHECK_THROWS_AS(attach_query(rm, bounds, s, g), std::invalid_argument);
  }

  SUBCASE("isolated attachment point is an error") {
    const Roadmap sparse = build_roadmap(bounds, 2, 1e-6, 3);
    Point s(2), g(2);
    s << 0.5, 0.5;
    g << 0.6, 0.6;
    CHECK_THROWS_AS(attach_query(sparse, bounds, s, g), std::runtime_error);
  }
}

TEST_CASE("attach_query: start and goal within radius share an edge") {
  const WorldBounds bounds = WorldBounds::unit_cube(2);
  const Roadmap rm = build_roadmap(bounds, 500, 0.0, 77);
  Point s(2), g(2);
  s << 0.50, 0.50;
  g << 0.50 + rm.radius * 0.5, 0.50;
  const auto [attached, query] = attach_query(rm, bounds, s, g);
  const std::int64_t idx = attached.find_edge(query.start, query.goal);
  REQUIRE(idx >= 0);
  CHECK(attached.weights[idx] == doctest::Approx(rm.radius * 0.5).epsilon(1e-12));
  CHECK(attached.find_edge(query.goal, query.start) >= 0);
  check_roadmap_invariants(attached);
}

TEST_CASE("make_roadmap from an explicit edge list") {
  Eigen::MatrixXd pts(3, 2);
  pts << 0, 0, 1, 0, 2, 0;
  const Roadmap rm = make_roadmap(pts, {{0, 1}, {1, 2}});
  CHECK(rm.edge_count() == 2);
  CHECK(rm.weights[rm.find_edge(0, 1)] == doctest::Approx(1.0));
  CHECK(rm.find_edge(0, 2) == -1);
  CHECK_THROWS_AS(make_roadmap(pts, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_roadmap(pts, {{0, 3}}), std::invalid_argument);
}
