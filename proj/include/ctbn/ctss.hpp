#ifndef CTBN_CTSS_HPP
#define CTBN_CTSS_HPP

#include "ctbn/scoring.hpp"

namespace ctbn {

enum class SearchMode { exhaustive, hill_climb };

struct CtssConfig {
  int max_parents = 4;
  SearchMode mode = SearchMode::exhaustive;
  Hyperparams hp{};
  double parent_penalty = 0.0;
};

struct CtssNodeResult {
  NodeScore best;
  long long sets_scored = 0;
};

/* Per-node parent search.  Exhaustive mode enumerates candidate sets by
 * size then lexicographically and keeps the first maximum, so score ties
 * resolve toward the smaller, lexicographically least set.  Hill-climb
 * mode starts from the empty set and applies the best strict add or
 * delete move until no move improves. */
CtssNodeResult learn_parents_ctss(const Dataset& ds, int node, const CtssConfig& config);

struct CtssResult {
  DirectedGraph graph;
  std::vector<NodeScore> scores;  // one per node
  long long sets_scored = 0;
};

CtssResult learn_structure_ctss(const Dataset& ds, const CtssConfig& config, int jobs = 1);

}  // namespace ctbn

#endif
