#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

namespace lazyplan {

using Point = Eigen::VectorXd;

// Axis-aligned bounding region of a d-dimensional planning space, d >= 2.
struct WorldBounds {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  int dim() const { return static_cast<int>(lo.size()); }
  double volume() const { return (hi - lo).prod(); }
  bool contains(const Point& p) const {
    return (p.array() >= lo.array()).all() && (p.array() <= hi.array()).all();
  }

  static WorldBounds unit_cube(int dim);
  static WorldBounds make(Eigen::VectorXd lo, Eigen::VectorXd hi);
};

// Closed axis-aligned box; touching a face counts as contact.
struct BoxObstacle {
  Eigen::VectorXd min_corner;
  Eigen::VectorXd max_corner;

  bool contains(const Point& p) const {
    return (p.array() >= min_corner.array()).all() &&
           (p.array() <= max_corner.array()).all();
  }
};

// Obstacle world: ground truth for collision queries. Immutable after
// construction; concurrent readers are safe.
struct World {
  WorldBounds bounds;
  std::vector<BoxObstacle> obstacles;
  std::uint64_t seed = 0;
};

// True iff the closed segment [a,b] touches any obstacle's closed box,
// or either endpoint lies outside the bounds (exterior is treated as
// obstacle). Parametric slab clipping, exact up to floating point.
bool segment_in_collision(const World& world, const Point& a, const Point& b);

// Slab test against a single closed box; exposed for the geometry tests.
bool segment_intersects_box(const Point& a, const Point& b,
                            const Eigen::VectorXd& box_min,
                            const Eigen::VectorXd& box_max);

// Samples n_obstacles boxes: per obstacle, d side lengths uniform in
// [size_lo, size_hi] (axis order) then d center coordinates uniform in
// bounds (axis order), via SplitMix64(seed). Boxes are clipped to the
// bounds. Throws std::invalid_argument if any size interval is empty,
// negative, or wider than the bounds extent on its axis.
World sample_world(const WorldBounds& bounds, int n_obstacles,
                   const Eigen::VectorXd& size_lo, const Eigen::VectorXd& size_hi,
                   std::uint64_t seed);

// Convenience overload with one size interval shared by every axis.
World sample_world(const WorldBounds& bounds, int n_obstacles, double size_min,
                   double size_max, std::uint64_t seed);

}  // namespace lazyplan
