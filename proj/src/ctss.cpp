#include "ctbn/ctss.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "parallel.hpp"

namespace ctbn {

namespace {

/* (size, lex) ordering used to break score ties. */
bool set_precedes(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

CtssNodeResult search_exhaustive(const Dataset& ds, int node, const CtssConfig& config) {
  std::vector<int> candidates;
  for (int v = 0; v < ds.node_count(); ++v)
    if (v != node) candidates.push_back(v);
  const int c = static_cast<int>(candidates.size());
  const int max_size = std::min(config.max_parents, c);

  CtssNodeResult result;
  bool have_best = false;
  std::vector<int> pick;
  for (int size = 0; size <= max_size; ++size) {
    pick.resize(size);
    for (int i = 0; i < size; ++i) pick[i] = i;
    for (;;) {
      std::vector<int> parents(size);
      for (int i = 0; i < size; ++i) parents[i] = candidates[pick[i]];
      NodeScore score = node_score(ds, node, parents, config.hp, config.parent_penalty);
      ++result.sets_scored;
      if (!have_best || score.total > result.best.total) {
        result.best = std::move(score);
        have_best = true;
      }
      if (size == 0) break;
      int i = size - 1;
      while (i >= 0 && pick[i] == c - size + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return result;
}

CtssNodeResult search_hill_climb(const Dataset& ds, int node, const CtssConfig& config) {
  CtssNodeResult result;
  std::map<std::vector<int>, NodeScore> memo;
  auto scored = [&](const std::vector<int>& parents) -> const NodeScore& {
    auto it = memo.find(parents);
    if (it == memo.end()) {
      it = memo.emplace(parents,
                        node_score(ds, node, parents, config.hp, config.parent_penalty))
               .first;
      ++result.sets_scored;
    }
    return it->second;
  };

  std::vector<int> current;
  result.best = scored(current);
  for (;;) {
    std::vector<std::vector<int>> moves;
    for (int v : current) {
      std::vector<int> next;
      for (int w : current)
        if (w != v) next.push_back(w);
      moves.push_back(std::move(next));
    }
    if (static_cast<int>(current.size()) < config.max_parents) {
      for (int v = 0; v < ds.node_count(); ++v) {
        if (v == node) continue;
        if (std::find(current.begin(), current.end(), v) != current.end()) continue;
        std::vector<int> next = current;
        next.insert(std::lower_bound(next.begin(), next.end(), v), v);
        moves.push_back(std::move(next));
      }
    }

    const NodeScore* chosen = nullptr;
    for (const auto& mv : moves) {
      const NodeScore& sc = scored(mv);
      if (!chosen || sc.total > chosen->total ||
          (sc.total == chosen->total && set_precedes(sc.parents, chosen->parents)))
        chosen = &sc;
    }
    if (!chosen || !(chosen->total > result.best.total)) break;
    result.best = *chosen;
    current = result.best.parents;
  }
  return result;
}

}  // namespace

CtssNodeResult learn_parents_ctss(const Dataset& ds, int node, const CtssConfig& config) {
  if (node < 0 || node >= ds.node_count()) throw std::invalid_argument("node out of range");
  if (config.max_parents < 0) throw std::invalid_argument("max_parents must be nonnegative");
  if (config.mode == SearchMode::exhaustive) return search_exhaustive(ds, node, config);
  return search_hill_climb(ds, node, config);
}

CtssResult learn_structure_ctss(const Dataset& ds, const CtssConfig& config, int jobs) {
  const int n = ds.node_count();
  CtssResult result;
  result.graph = DirectedGraph(n);
  result.scores.resize(n);

  std::vector<CtssNodeResult> per_node(n);
  detail::parallel_for(n, jobs, [&](int node) {
    per_node[node] = learn_parents_ctss(ds, node, config);
  });

  for (int node = 0; node < n; ++node) {
    result.scores[node] = per_node[node].best;
    result.sets_scored += per_node[node].sets_scored;
    for (int p : per_node[node].best.parents) result.graph.add_arc(p, node);
  }
  return result;
}

}  // namespace ctbn
