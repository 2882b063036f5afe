#include "lazyplan/algorithms.hpp"

#include <chrono>
#include <stdexcept>

namespace lazyplan {
namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t elapsed_ns(Clock::time_point t0) {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0).count());
}

void validate_query(const Roadmap& rm, const Query& q) {
  if (q.start < 0 || q.goal < 0 || q.start >= rm.size() || q.goal >= rm.size())
    throw std::invalid_argument("query: vertex id out of range");
  if (q.start == q.goal) throw std::invalid_argument("query: start == goal");
}

// Vertices with at least one evaluated outgoing edge, in first-touch order.
class ExpandedSet {
 public:
  explicit ExpandedSet(VertexId n) : seen_(n, 0) {}
  void mark(VertexId v) {
    if (!seen_[v]) {
      seen_[v] = 1;
      list_.push_back(v);
    }
  }
  std::vector<VertexId> take() {
    std::sort(list_.begin(), list_.end());
    return std::move(list_);
  }

 private:
  std::vector<char> seen_;
  std::vector<VertexId> list_;
};

std::vector<VertexId> reconstruct_path(const std::vector<VertexId>& parent, VertexId start,
                                       VertexId goal) {
  std::vector<VertexId> path;
  for (VertexId v = goal; v != -1; v = parent[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  if (path.front() != start) throw std::logic_error("broken parent chain");
  return path;
}

struct EdgeRef {
  VertexId source;
  VertexId target;
  std::int64_t idx;  // CSR slot of source -> target
};

}  // namespace

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::AStar: return "astar";
    case Algorithm::LeaStar: return "lea";
    case Algorithm::LwaStar: return "lwa";
    case Algorithm::LazySp: return "lazysp";
    case Algorithm::LraStar: return "lra";
    case Algorithm::Oracle: return "oracle";
  }
  return "?";
}

std::optional<Algorithm> algorithm_from_name(std::string_view name) {
  for (Algorithm a : {Algorithm::AStar, Algorithm::LeaStar, Algorithm::LwaStar,
                      Algorithm::LazySp, Algorithm::LraStar, Algorithm::Oracle})
    if (name == algorithm_name(a)) return a;
  return std::nullopt;
}

const std::vector<std::string>& planner_names() {
  static const std::vector<std::string> names = {"astar", "lea", "lwa", "lazysp", "lra"};
  return names;
}

SearchResult a_star(const Roadmap& rm, const Query& q, EdgeEvaluator& eval,
                    const SearchOptions& opts) {
  validate_query(rm, q);
  const auto t0 = Clock::now();
  const std::uint64_t evals0 = eval.eval_count();
  const double eps = opts.epsilon;
  Heuristic h(rm, q.goal);

  std::vector<double> g(rm.size(), kInfCost);
  std::vector<VertexId> parent(rm.size(), -1);
  ExpandedSet expanded(rm.size());
  LazyQueue<VertexId> queue;

  SearchResult res;
  res.algorithm = Algorithm::AStar;
  res.epsilon = eps;

  g[q.start] = 0.0;
  queue.push(eps * h(q.start), h(q.start), q.start);

  while (!queue.empty()) {
    const auto entry = queue.pop();
    const VertexId v = entry.value;
    if (opts.stale_skip && entry.key.f > g[v] + eps * h(v)) continue;
    if (v == q.goal) {
      res.status = SearchStatus::Solved;
      res.cost = g[v];
      res.termination_key = entry.key.f;
      break;
    }
    ++res.counters.vertex_expansions;
    expanded.mark(v);
    for (std::int64_t i = rm.offsets[v]; i < rm.offsets[v + 1]; ++i) {
      const VertexId nb = rm.neighbors[i];
      const double w = eval.evaluate_at(i, v, nb);
      if (w == kInfCost) continue;
      const double g_new = g[v] + w;
      if (g_new < g[nb]) {
        g[nb] = g_new;
        parent[nb] = v;
        queue.push(g_new + eps * h(nb), h(nb), nb);
      }
    }
  }

  res.counters.edge_evaluations = eval.eval_count() - evals0;
  res.counters.queue_pushes = queue.pushes();
  res.counters.queue_pops = queue.pops();
  res.counters.wall_time_ns = elapsed_ns(t0);
  res.expanded = expanded.take();
  if (res.solved()) res.path = reconstruct_path(parent, q.start, q.goal);
  return res;
}

SearchResult lea_star(const Roadmap& rm, const Query& q, EdgeEvaluator& eval,
                      const SearchOptions& opts) {
  validate_query(rm, q);
  const auto t0 = Clock::now();
  const std::uint64_t evals0 = eval.eval_count();
  const double eps = opts.epsilon;
  Heuristic h(rm, q.goal);

  std::vector<double> g(rm.size(), kInfCost);
  std::vector<VertexId> parent(rm.size(), -1);
  ExpandedSet expanded(rm.size());
  LazyQueue<EdgeRef> queue;

  SearchResult res;
  res.algorithm = Algorithm::LeaStar;
  res.epsilon = eps;

  const auto push_successors = [&](VertexId v) {
    ++res.counters.vertex_expansions;
    for (std::int64_t i = rm.offsets[v]; i < rm.offsets[v + 1]; ++i) {
      const VertexId nb = rm.neighbors[i];
      queue.push(g[v] + rm.weights[i] + eps * h(nb), h(nb), EdgeRef{v, nb, i});
    }
  };

  g[q.start] = 0.0;
  push_successors(q.start);

  while (!queue.empty()) {
    const auto entry = queue.pop();
    const auto [u, v, idx] = entry.value;
    // Exit test precedes everything else: the terminating pop must not
    // trigger an evaluation.
    if (g[q.goal] <= entry.key.f) {
      res.status = SearchStatus::Solved;
      res.cost = g[q.goal];
      res.termination_key = entry.key.f;
      break;
    }
    if (opts.stale_skip && entry.key.f > g[u] + rm.weights[idx] + eps * h(v)) continue;
    const double w = eval.evaluate_at(idx, u, v);
    expanded.mark(u);
    if (w == kInfCost) continue;
    const double g_new = g[u] + w;
    if (g_new < g[v]) {
      g[v] = g_new;
      parent[v] = u;
      push_successors(v);
    }
  }
  if (res.status == SearchStatus::NoSolution && g[q.goal] < kInfCost) {
    // Queue drained after the goal was reached; the found path stands.
    res.status = SearchStatus::Solved;
    res.cost = g[q.goal];
  }

  res.counters.edge_evaluations = eval.eval_count() - evals0;
  res.counters.queue_pushes = queue.pushes();
  res.counters.queue_pops = queue.pops();
  res.counters.wall_time_ns = elapsed_ns(t0);
  res.expanded = expanded.take();
  if (res.solved()) res.path = reconstruct_path(parent, q.start, q.goal);
  return res;
}

SearchResult lwa_star(const Roadmap& rm, const Query& q, EdgeEvaluator& eval,
                      const SearchOptions& opts) {
  validate_query(rm, q);
  const auto t0 = Clock::now();
  const std::uint64_t evals0 = eval.eval_count();
  const double eps = opts.epsilon;
  Heuristic h(rm, q.goal);

  struct LwaEntry {
    VertexId v;
    VertexId pred;     // -1 for the start entry
    std::int64_t idx;  // CSR slot of pred -> v
    bool evaluated;
  };

  std::vector<double> g(rm.size(), kInfCost);
  std::vector<VertexId> parent(rm.size(), -1);
  ExpandedSet expanded(rm.size());
  LazyQueue<LwaEntry> queue;

  SearchResult res;
  res.algorithm = Algorithm::LwaStar;
  res.epsilon = eps;

  g[q.start] = 0.0;
  queue.push(eps * h(q.start), h(q.start), LwaEntry{q.start, -1, -1, true});

  while (!queue.empty()) {
    const auto entry = queue.pop();
    const auto [v, pred, idx, evaluated] = entry.value;
    if (!evaluated) {
      if (opts.stale_skip && entry.key.f > g[pred] + rm.weights[idx] + eps * h(v)) continue;
      const double w = eval.evaluate_at(idx, pred, v);
      expanded.mark(pred);
      if (w == kInfCost) continue;
      const double g_new = g[pred] + w;
      if (g_new < g[v]) {
        g[v] = g_new;
        parent[v] = pred;
        // Reinserted with the true-cost key after evaluation.
        queue.push(g_new + eps * h(v), h(v), LwaEntry{v, pred, idx, true});
      }
    } else {
      if (opts.stale_skip && entry.key.f > g[v] + eps * h(v)) continue;
      if (v == q.goal) {
        res.status = SearchStatus::Solved;
        res.cost = g[v];
        res.termination_key = entry.key.f;
        break;
      }
      ++res.counters.vertex_expansions;
      for (std::int64_t i = rm.offsets[v]; i < rm.offsets[v + 1]; ++i) {
        const VertexId nb = rm.neighbors[i];
        queue.push(g[v] + rm.weights[i] + eps * h(nb), h(nb), LwaEntry{nb, v, i, false});
      }
    }
  }
  if (res.status == SearchStatus::NoSolution && g[q.goal] < kInfCost) {
    res.status = SearchStatus::Solved;
    res.cost = g[q.goal];
  }

  res.counters.edge_evaluations = eval.eval_count() - evals0;
  res.counters.queue_pushes = queue.pushes();
  res.counters.queue_pops = queue.pops();
  res.counters.wall_time_ns = elapsed_ns(t0);
  res.expanded = expanded.take();
  if (res.solved()) res.path = reconstruct_path(parent, q.start, q.goal);
  return res;
}

namespace {

// Reusable buffers for the replanning searches; epoch stamps avoid a
// full clear per restart.
struct InnerBuffers {
  explicit InnerBuffers(VertexId n)
      : g(n, 0.0), depth(n, 0), parent(n, -1), parent_edge(n, -1), stamp(n, 0) {}

  std::vector<double> g;
  std::vector<int> depth;
  std::vector<VertexId> parent;
  std::vector<std::int64_t> parent_edge;
  std::vector<std::uint32_t> stamp;
  std::uint32_t epoch = 0;

  void next_epoch() { ++epoch; }
  bool visited(VertexId v) const { return stamp[v] == epoch; }
  void touch(VertexId v) { stamp[v] = epoch; }
};

// Weighted A* over hybrid costs (cached true cost where evaluated,
// w-hat elsewhere). No edge evaluations. Returns the tree edges of the
// goal path, or false when the goal is unreachable under hybrid costs.
bool hybrid_astar(const Roadmap& rm, const EdgeEvaluator& eval, const Query& q, double eps,
                  const Heuristic& h, InnerBuffers& buf, LazyQueue<VertexId>& queue,
                  Counters& counters, std::vector<EdgeRef>& path_edges, double* cost_out) {
  buf.next_epoch();
  queue.clear();
  buf.g[q.start] = 0.0;
  buf.parent[q.start] = -1;
  buf.touch(q.start);
  queue.push(eps * h(q.start), h(q.start), q.start);

  while (!queue.empty()) {
    const auto entry = queue.pop();
    const VertexId v = entry.value;
    if (entry.key.f > buf.g[v] + eps * h(v)) continue;
    if (v == q.goal) {
      path_edges.clear();
      for (VertexId x = v; buf.parent[x] != -1; x = buf.parent[x])
        path_edges.push_back(EdgeRef{buf.parent[x], x, buf.parent_edge[x]});
      std::reverse(path_edges.begin(), path_edges.end());
      if (cost_out) *cost_out = buf.g[v];
      return true;
    }
    ++counters.vertex_expansions;
    for (std::int64_t i = rm.offsets[v]; i < rm.offsets[v + 1]; ++i) {
      const double w = eval.hybrid_at(i);
      if (w == kInfCost) continue;
      const VertexId nb = rm.neighbors[i];
      const double g_new = buf.g[v] + w;
      if (!buf.visited(nb) || g_new < buf.g[nb]) {
        buf.touch(nb);
        buf.g[nb] = g_new;
        buf.parent[nb] = v;
        buf.parent_edge[nb] = i;
        queue.push(g_new + eps * h(nb), h(nb), nb);
      }
    }
  }
  return false;
}

}  // namespace

SearchResult lazy_sp(const Roadmap& rm, const Query& q, EdgeEvaluator& eval,
                     const SearchOptions& opts) {
  validate_query(rm, q);
  const auto t0 = Clock::now();
  const std::uint64_t evals0 = eval.eval_count();
  const double eps = opts.epsilon;
  Heuristic h(rm, q.goal);

  InnerBuffers buf(rm.size());
  LazyQueue<VertexId> queue;
  ExpandedSet expanded(rm.size());
  std::vector<EdgeRef> candidate;

  SearchResult res;
  res.algorithm = Algorithm::LazySp;
  res.epsilon = eps;

  while (true) {
    double hybrid_cost = kInfCost;
    if (!hybrid_astar(rm, eval, q, eps, h, buf, queue, res.counters, candidate,
                      &hybrid_cost)) {
      break;  // no hybrid path left: no solution
    }
    const EdgeRef* first_unevaluated = nullptr;
    for (const EdgeRef& e : candidate) {
      if (!eval.is_evaluated_at(e.idx)) {
        first_unevaluated = &e;
        break;
      }
    }
    if (first_unevaluated == nullptr) {
      // Candidate is fully evaluated: it is the answer.
      res.status = SearchStatus::Solved;
      res.cost = hybrid_cost;
      res.path.clear();
      res.path.push_back(q.start);
      for (const EdgeRef& e : candidate) res.path.push_back(e.target);
      break;
    }
    eval.evaluate_at(first_unevaluated->idx, first_unevaluated->source,
                     first_unevaluated->target);
    expanded.mark(first_unevaluated->source);
  }

  res.counters.edge_evaluations = eval.eval_count() - evals0;
  res.counters.queue_pushes = queue.pushes();
  res.counters.queue_pops = queue.pops();
  res.counters.wall_time_ns = elapsed_ns(t0);
  res.expanded = expanded.take();
  return res;
}

SearchResult lra_star(const Roadmap& rm, const Query& q, EdgeEvaluator& eval,
                      const SearchOptions& opts) {
  validate_query(rm, q);
  if (opts.lookahead < 1) throw std::invalid_argument("lra_star: lookahead must be >= 1");
  const auto t0 = Clock::now();
  const std::uint64_t evals0 = eval.eval_count();
  const double eps = opts.epsilon;
  const int lookahead = opts.lookahead;
  Heuristic h(rm, q.goal);

  InnerBuffers buf(rm.size());
  LazyQueue<VertexId> queue;
  ExpandedSet expanded(rm.size());
  std::vector<EdgeRef> subpath;

  SearchResult res;
  res.algorithm = Algorithm::LraStar;
  res.epsilon = eps;

  bool exhausted = false;
  while (!exhausted && !res.solved()) {
    buf.next_epoch();
    queue.clear();
    buf.g[q.start] = 0.0;
    buf.depth[q.start] = 0;
    buf.parent[q.start] = -1;
    buf.touch(q.start);
    queue.push(eps * h(q.start), h(q.start), q.start);

    bool event = false;
    while (!queue.empty()) {
      const auto entry = queue.pop();
      const VertexId v = entry.value;
      if (entry.key.f > buf.g[v] + eps * h(v)) continue;
      if (v == q.goal && buf.depth[v] == 0) {
        // Goal reached through fully evaluated edges, and this pop is
        // the queue minimum: certificate holds.
        res.status = SearchStatus::Solved;
        res.cost = buf.g[v];
        res.termination_key = entry.key.f;
        break;
      }
      if (v == q.goal || buf.depth[v] >= lookahead) {
        // Evaluate the unevaluated edges of the best lazy subpath in
        // forward order, stopping at the first blocked one.
        subpath.clear();
        for (VertexId x = v; buf.parent[x] != -1; x = buf.parent[x])
          subpath.push_back(EdgeRef{buf.parent[x], x, buf.parent_edge[x]});
        std::reverse(subpath.begin(), subpath.end());
        for (const EdgeRef& e : subpath) {
          if (eval.is_evaluated_at(e.idx)) continue;
          const double w = eval.evaluate_at(e.idx, e.source, e.target);
          expanded.mark(e.source);
          if (w == kInfCost) break;
        }
        event = true;
        break;
      }
      ++res.counters.vertex_expansions;
      for (std::int64_t i = rm.offsets[v]; i < rm.offsets[v + 1]; ++i) {
        const auto state = eval.state_at(i);
        if (state == EdgeEvaluator::kBlocked) continue;
        const VertexId nb = rm.neighbors[i];
        const int nd = buf.depth[v] + (state == EdgeEvaluator::kUnknown ? 1 : 0);
        const double g_new = buf.g[v] + rm.weights[i];
        if (!buf.visited(nb) || g_new < buf.g[nb]) {
          buf.touch(nb);
          buf.g[nb] = g_new;
          buf.depth[nb] = nd;
          buf.parent[nb] = v;
          buf.parent_edge[nb] = i;
          queue.push(g_new + eps * h(nb), h(nb), nb);
        }
      }
    }
    exhausted = !event && !res.solved();
  }

  res.counters.edge_evaluations = eval.eval_count() - evals0;
  res.counters.queue_pushes = queue.pushes();
  res.counters.queue_pops = queue.pops();
  res.counters.wall_time_ns = elapsed_ns(t0);
  res.expanded = expanded.take();
  if (res.solved()) {
    for (VertexId x = q.goal; x != -1; x = buf.parent[x]) res.path.push_back(x);
    std::reverse(res.path.begin(), res.path.end());
  }
  return res;
}

EvaluatedGraph::EvaluatedGraph(const Roadmap& rm, const World& world)
    : roadmap_(&rm), true_w_(rm.weights) {
  for (VertexId u = 0; u < rm.size(); ++u) {
    for (std::int64_t i = rm.offsets[u]; i < rm.offsets[u + 1]; ++i) {
      const VertexId v = rm.neighbors[i];
      if (v <= u) continue;  // each unordered pair once
      ++evals_;
      if (segment_in_collision(world, rm.point(u), rm.point(v))) {
        true_w_[i] = kInfCost;
        true_w_[rm.find_edge(v, u)] = kInfCost;
      }
    }
  }
}

SearchResult EvaluatedGraph::shortest_path(const Query& q) const {
  const Roadmap& rm = *roadmap_;
  validate_query(rm, q);
  const auto t0 = Clock::now();

  std::vector<double> g(rm.size(), kInfCost);
  std::vector<VertexId> parent(rm.size(), -1);
  LazyQueue<VertexId> queue;

  SearchResult res;
  res.algorithm = Algorithm::Oracle;
  res.epsilon = 1.0;
  res.counters.edge_evaluations = evals_;

  g[q.start] = 0.0;
  queue.push(0.0, 0.0, q.start);
  while (!queue.empty()) {
    const auto entry = queue.pop();
    const VertexId v = entry.value;
    if (entry.key.f > g[v]) continue;
    if (v == q.goal) {
      res.status = SearchStatus::Solved;
      res.cost = g[v];
      res.termination_key = entry.key.f;
      break;
    }
    ++res.counters.vertex_expansions;
    for (std::int64_t i = rm.offsets[v]; i < rm.offsets[v + 1]; ++i) {
      const double w = true_w_[i];
      if (w == kInfCost) continue;
      const VertexId nb = rm.neighbors[i];
      const double g_new = g[v] + w;
      if (g_new < g[nb]) {
        g[nb] = g_new;
        parent[nb] = v;
        queue.push(g_new, 0.0, nb);
      }
    }
  }

  res.counters.queue_pushes = queue.pushes();
  res.counters.queue_pops = queue.pops();
  res.counters.wall_time_ns = elapsed_ns(t0);
  if (res.solved()) res.path = reconstruct_path(parent, q.start, q.goal);
  return res;
}

SearchResult dijkstra_oracle(const Roadmap& rm, const Query& q, const World& world) {
  const auto t0 = Clock::now();
  EvaluatedGraph graph(rm, world);
  SearchResult res = graph.shortest_path(q);
  res.counters.wall_time_ns = elapsed_ns(t0);
  return res;
}

SearchResult run_algorithm(Algorithm a, const Roadmap& rm, const Query& q,
                           EdgeEvaluator& eval, const SearchOptions& opts) {
  switch (a) {
    case Algorithm::AStar: return a_star(rm, q, eval, opts);
    case Algorithm::LeaStar: return lea_star(rm, q, eval, opts);
    case Algorithm::LwaStar: return lwa_star(rm, q, eval, opts);
    case Algorithm::LazySp: return lazy_sp(rm, q, eval, opts);
    case Algorithm::LraStar: return lra_star(rm, q, eval, opts);
    case Algorithm::Oracle: return dijkstra_oracle(rm, q, eval.world());
  }
  throw std::logic_error("unknown algorithm");
}

}  // namespace lazyplan
