#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lazyplan/search_core.hpp"

namespace lazyplan {

enum class Algorithm { AStar, LeaStar, LwaStar, LazySp, LraStar, Oracle };

std::string_view algorithm_name(Algorithm a);
std::optional<Algorithm> algorithm_from_name(std::string_view name);
const std::vector<std::string>& planner_names();  // the five CLI-selectable planners

enum class SearchStatus { Solved, NoSolution };

struct SearchResult {
  SearchStatus status = SearchStatus::NoSolution;
  std::vector<VertexId> path;  // v_s ... v_g when Solved, else empty
  double cost = kInfCost;      // sum of evaluated true costs along path
  Counters counters;
  Algorithm algorithm = Algorithm::AStar;
  double epsilon = 1.0;

  // In-memory diagnostics, not part of the serialized result.
  std::vector<VertexId> expanded;     // vertices with an evaluated outgoing edge
  double termination_key = kInfCost;  // queue key that satisfied the exit test

  bool solved() const { return status == SearchStatus::Solved; }
};

// Vertex-queue A*: expanding a vertex evaluates every outgoing edge
// before relaxing; terminates when the goal is popped.
SearchResult a_star(const Roadmap& roadmap, const Query& query, EdgeEvaluator& evaluator,
                    const SearchOptions& opts = {});

// Lazy edge-based A*: a single edge queue ordered by f(e) = g(source) +
// w-hat(e) + eps*h(target); an edge is evaluated only when it reaches
// the queue minimum, and the search stops once g(goal) <= popped key.
SearchResult lea_star(const Roadmap& roadmap, const Query& query, EdgeEvaluator& evaluator,
                      const SearchOptions& opts = {});

// Lazy weighted A*: one queue holding unevaluated edge entries and
// evaluated vertex entries; a popped unevaluated entry is evaluated and
// its target reinserted with the true-cost key; a popped evaluated
// entry expands. Terminates when the goal pops as evaluated.
SearchResult lwa_star(const Roadmap& roadmap, const Query& query, EdgeEvaluator& evaluator,
                      const SearchOptions& opts = {});

// LazySP with the forward selector: replan on hybrid weights (cached
// true cost where known, w-hat elsewhere), evaluate the first
// unevaluated edge of the candidate path, repeat until a candidate is
// fully evaluated.
SearchResult lazy_sp(const Roadmap& roadmap, const Query& query, EdgeEvaluator& evaluator,
                     const SearchOptions& opts = {});

// Constant-lookahead lazy search: inner searches extend at most
// opts.lookahead unevaluated edges beyond the evaluated region, then the
// unevaluated edges of the best lazy subpath are evaluated in forward
// order. lookahead=1 matches LWA*'s evaluations, lookahead >= graph
// diameter matches LazySP's.
SearchResult lra_star(const Roadmap& roadmap, const Query& query, EdgeEvaluator& evaluator,
                      const SearchOptions& opts = {});

// Ground-truth reference: evaluates every roadmap edge eagerly and runs
// textbook Dijkstra on the resulting graph.
SearchResult dijkstra_oracle(const Roadmap& roadmap, const Query& query, const World& world);

SearchResult run_algorithm(Algorithm a, const Roadmap& roadmap, const Query& query,
                           EdgeEvaluator& evaluator, const SearchOptions& opts = {});

// A roadmap with every edge evaluated against one world, supporting
// many Dijkstra queries. Shared by dijkstra_oracle and the test
// harnesses that compare planners against the true optimum.
class EvaluatedGraph {
 public:
  EvaluatedGraph(const Roadmap& roadmap, const World& world);

  SearchResult shortest_path(const Query& query) const;
  std::uint64_t edge_evaluations() const { return evals_; }
  double true_cost_at(std::int64_t idx) const { return true_w_[idx]; }

 private:
  const Roadmap* roadmap_;
  std::vector<double> true_w_;  // per CSR slot, +inf where blocked
  std::uint64_t evals_ = 0;
};

}  // namespace lazyplan
