#include "lazyplan/world.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "lazyplan/rng.hpp"

namespace lazyplan {

WorldBounds WorldBounds::unit_cube(int dim) {
  return make(Eigen::VectorXd::Zero(dim), Eigen::VectorXd::Ones(dim));
}

WorldBounds WorldBounds::make(Eigen::VectorXd lo, Eigen::VectorXd hi) {
  if (lo.size() != hi.size()) throw std::invalid_argument("bounds: lo/hi size mismatch");
  if (lo.size() < 2) throw std::invalid_argument("bounds: dim must be >= 2");
  if (!(lo.array() < hi.array()).all())
    throw std::invalid_argument("bounds: lo must be < hi on every axis");
  return WorldBounds{std::move(lo), std::move(hi)};
}

bool segment_intersects_box(const Point& a, const Point& b,
                            const Eigen::VectorXd& box_min,
                            const Eigen::VectorXd& box_max) {
  // Clip t in [0,1] against each slab; closed boxes, so a touching
  // interval of zero width still counts.
  double t0 = 0.0, t1 = 1.0;
  const int d = static_cast<int>(a.size());
  for (int i = 0; i < d; ++i) {
    const double dir = b[i] - a[i];
    if (dir == 0.0) {
      if (a[i] < box_min[i] || a[i] > box_max[i]) return false;
      continue;
    }
    const double inv = 1.0 / dir;
    double ta = (box_min[i] - a[i]) * inv;
    double tb = (box_max[i] - a[i]) * inv;
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return false;
  }
  return true;
}

bool segment_in_collision(const World& world, const Point& a, const Point& b) {
  if (!world.bounds.contains(a) || !world.bounds.contains(b)) return true;
  for (const BoxObstacle& box : world.obstacles) {
    if (segment_intersects_box(a, b, box.min_corner, box.max_corner)) return true;
  }
  return false;
}

World sample_world(const WorldBounds& bounds, int n_obstacles,
                   const Eigen::VectorXd& size_lo, const Eigen::VectorXd& size_hi,
                   std::uint64_t seed) {
  const int d = bounds.dim();
  if (n_obstacles < 0) throw std::invalid_argument("sample_world: n_obstacles < 0");
  if (size_lo.size() != d || size_hi.size() != d)
    throw std::invalid_argument("sample_world: size interval dim mismatch");
  for (int i = 0; i < d; ++i) {
    if (!(size_lo[i] > 0.0) || size_hi[i] < size_lo[i])
      throw std::invalid_argument("sample_world: size interval empty or nonpositive");
    if (size_hi[i] > bounds.hi[i] - bounds.lo[i])
      throw std::invalid_argument("sample_world: size interval wider than bounds extent");
  }

  World world;
  world.bounds = bounds;
  world.seed = seed;
  world.obstacles.reserve(static_cast<std::size_t>(n_obstacles));
  SplitMix64 rng(seed);
  Eigen::VectorXd side(d), center(d);
  for (int k = 0; k < n_obstacles; ++k) {
    for (int i = 0; i < d; ++i) side[i] = rng.uniform(size_lo[i], size_hi[i]);
    for (int i = 0; i < d; ++i) center[i] = rng.uniform(bounds.lo[i], bounds.hi[i]);
    BoxObstacle box;
    box.min_corner = (center - 0.5 * side).cwiseMax(bounds.lo);
    box.max_corner = (center + 0.5 * side).cwiseMin(bounds.hi);
    world.obstacles.push_back(std::move(box));
  }
  return world;
}

World sample_world(const WorldBounds& bounds, int n_obstacles, double size_min,
                   double size_max, std::uint64_t seed) {
  const int d = bounds.dim();
  return sample_world(bounds, n_obstacles, Eigen::VectorXd::Constant(d, size_min),
                      Eigen::VectorXd::Constant(d, size_max), seed);
}

}  // namespace lazyplan
