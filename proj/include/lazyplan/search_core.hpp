#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "lazyplan/roadmap.hpp"
#include "lazyplan/world.hpp"

namespace lazyplan {

inline constexpr double kInfCost = std::numeric_limits<double>::infinity();

// Addition that keeps +inf absorbing and never yields NaN.
inline double saturating_add(double a, double b) {
  if (a == kInfCost || b == kInfCost) return kInfCost;
  return a + b;
}

// f(v) = g(v) + eps * h(v).
inline double vertex_key(double g, double h, double eps) { return g + eps * h; }

// f(e) = g(source) + w_hat(e) + eps * h(target): the estimated total
// cost of a start-goal path through the edge.
inline double edge_key(double g_source, double w_hat, double h_target, double eps) {
  return g_source + w_hat + eps * h_target;
}

// Memoizing, counting collision oracle. An edge's true cost is its
// estimate w-hat if the segment is free and +inf otherwise; each
// distinct unordered pair is collision-checked exactly once, and the
// result is stored on both directed slots of the CSR adjacency.
class EdgeEvaluator {
 public:
  enum State : std::int8_t { kUnknown = 0, kFree = 1, kBlocked = 2 };

  EdgeEvaluator(const World& world, const Roadmap& roadmap)
      : world_(&world), roadmap_(&roadmap), state_(roadmap.neighbors.size(), kUnknown) {}

  // Hot path: `idx` is the CSR slot of (u -> v) in u's neighbor list.
  double evaluate_at(std::int64_t idx, VertexId u, VertexId v) {
    if (state_[idx] == kUnknown) {
      ++eval_count_;
      const bool hit =
          segment_in_collision(*world_, roadmap_->point(u), roadmap_->point(v));
      const State s = hit ? kBlocked : kFree;
      state_[idx] = s;
      const std::int64_t rev = roadmap_->find_edge(v, u);
      state_[rev] = s;
    }
    return state_[idx] == kBlocked ? kInfCost : roadmap_->weights[idx];
  }

  // Eq.-style interface keyed by the vertex pair; w_hat must be the
  // roadmap's estimate for the edge.
  double evaluate(VertexId u, VertexId v, double w_hat) {
    const std::int64_t idx = roadmap_->find_edge(u, v);
    if (idx < 0) throw std::invalid_argument("evaluate: (u,v) is not a roadmap edge");
    const double w = evaluate_at(idx, u, v);
    return w == kInfCost ? kInfCost : w_hat;
  }

  bool is_evaluated_at(std::int64_t idx) const { return state_[idx] != kUnknown; }
  bool is_evaluated(VertexId u, VertexId v) const {
    return is_evaluated_at(roadmap_->find_edge(u, v));
  }

  // Cached true cost, or the estimate when the pair is unevaluated.
  double hybrid_at(std::int64_t idx) const {
    return state_[idx] == kBlocked ? kInfCost : roadmap_->weights[idx];
  }

  std::uint64_t eval_count() const { return eval_count_; }
  State state_at(std::int64_t idx) const { return static_cast<State>(state_[idx]); }
  const Roadmap& roadmap() const { return *roadmap_; }
  const World& world() const { return *world_; }

 private:
  const World* world_;
  const Roadmap* roadmap_;
  std::vector<std::int8_t> state_;
  std::uint64_t eval_count_ = 0;
};

// Euclidean distance to the goal vertex; admissible and consistent for
// w-hat equal to Euclidean edge length.
class Heuristic {
 public:
  Heuristic(const Roadmap& roadmap, VertexId goal)
      : vertices_(&roadmap.vertices), goal_row_(roadmap.vertices.row(goal)) {}

  double operator()(VertexId v) const { return (vertices_->row(v) - goal_row_).norm(); }

 private:
  const Eigen::MatrixXd* vertices_;
  Eigen::RowVectorXd goal_row_;
};

// Queue ordering key: lexicographic on (f, h, insertion sequence).
// f-ties break toward the goal; the sequence number pins runs down to
// the bit.
struct QueueKey {
  double f = kInfCost;
  double h = kInfCost;
  std::uint64_t seq = 0;

  friend bool operator<(const QueueKey& a, const QueueKey& b) {
    if (a.f != b.f) return a.f < b.f;
    if (a.h != b.h) return a.h < b.h;
    return a.seq < b.seq;
  }
};

// Min-queue with lazy reinsertion: duplicates are allowed, decrease-key
// is never performed, and stale entries are skipped by the consumer.
template <typename T>
class LazyQueue {
 public:
  struct Entry {
    QueueKey key;
    T value;
  };

  void push(double f, double h, T value) {
    heap_.push_back(Entry{QueueKey{f, h, next_seq_++}, std::move(value)});
    std::push_heap(heap_.begin(), heap_.end(), greater);
    ++pushes_;
  }

  Entry pop() {
    std::pop_heap(heap_.begin(), heap_.end(), greater);
    Entry e = std::move(heap_.back());
    heap_.pop_back();
    ++pops_;
    return e;
  }

  void clear() { heap_.clear(); }
  bool empty() const { return heap_.empty(); }
  std::uint64_t pushes() const { return pushes_; }
  std::uint64_t pops() const { return pops_; }

 private:
  // std heaps are max-heaps; invert the comparison to pop the minimum.
  static bool greater(const Entry& a, const Entry& b) { return b.key < a.key; }
  std::vector<Entry> heap_;
  std::uint64_t next_seq_ = 0;
  std::uint64_t pushes_ = 0;
  std::uint64_t pops_ = 0;
};

// Instrumentation snapshot carried by every SearchResult.
struct Counters {
  std::uint64_t edge_evaluations = 0;
  std::uint64_t vertex_expansions = 0;
  std::uint64_t queue_pushes = 0;
  std::uint64_t queue_pops = 0;
  std::uint64_t wall_time_ns = 0;
};

struct SearchOptions {
  double epsilon = 1.0;    // heuristic inflation, >= 1
  int lookahead = 4;       // LRA* only
  bool stale_skip = true;  // skip superseded queue entries without evaluating
};

}  // namespace lazyplan
