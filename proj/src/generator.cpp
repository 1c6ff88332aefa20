#include "ctbn/generator.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace ctbn {

namespace {

constexpr std::uint64_t kGraphStream = 0x67;
constexpr std::uint64_t kCimStream = 0xC1;
constexpr std::uint64_t kTrajectoryStream = 0xD5;

void check_config(const GenConfig& c, bool for_sampling) {
  if (c.nodes < 2) throw std::invalid_argument("at least 2 nodes required");
  if (c.density < 0 || c.density > 1)
    throw std::invalid_argument("density must lie in [0, 1]");
  if (c.cardinality < 2) throw std::invalid_argument("cardinality must be at least 2");
  if (!(c.rate_min > 0) || c.rate_max < c.rate_min)
    throw std::invalid_argument("rate range must satisfy 0 < rate_min <= rate_max");
  if (for_sampling) {
    if (c.trajectories < 1) throw std::invalid_argument("at least one trajectory required");
    if (!(c.mean_duration > 0)) throw std::invalid_argument("duration must be positive");
  }
}

}  // namespace

int arc_count_for(int nodes, double density) {
  return static_cast<int>(std::llround(density * nodes * (nodes - 1)));
}

DirectedGraph random_connected_graph(int nodes, int arc_count, Rng& rng) {
  const int n = nodes;
  if (n < 2) throw std::invalid_argument("at least 2 nodes required");
  if (arc_count < n - 1 || arc_count > n * (n - 1))
    throw std::invalid_argument("arc count outside [n-1, n*(n-1)]");

  std::vector<std::pair<int, int>> tree;
  if (n == 2) {
    tree.emplace_back(0, 1);
  } else {
    std::vector<int> pruefer(n - 2);
    for (int& v : pruefer) v = rng.uniform_int(n);
    std::vector<int> degree(n, 1);
    for (int v : pruefer) ++degree[v];
    int ptr = 0;
    while (degree[ptr] != 1) ++ptr;
    int leaf = ptr;
    for (int v : pruefer) {
      tree.emplace_back(leaf, v);
      if (--degree[v] == 1 && v < ptr) {
        leaf = v;
      } else {
        ++ptr;
        while (degree[ptr] != 1) ++ptr;
        leaf = ptr;
      }
    }
    tree.emplace_back(leaf, n - 1);
  }

  DirectedGraph g(n);
  for (auto [a, b] : tree) {
    if (rng.uniform_int(2) == 0)
      g.add_arc(a, b);
    else
      g.add_arc(b, a);
  }

  std::vector<std::pair<int, int>> pool;
  pool.reserve(static_cast<std::size_t>(n) * (n - 1) - (n - 1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && !g.has_arc(i, j)) pool.emplace_back(i, j);
  rng.shuffle(pool.begin(), pool.end());
  for (int k = 0; k < arc_count - (n - 1); ++k) g.add_arc(pool[k].first, pool[k].second);
  return g;
}

DirectedGraph generate_graph(const GenConfig& config, bool clamp_connectivity) {
  check_config(config, false);
  const int n = config.nodes;
  int want = arc_count_for(n, config.density);
  if (want < n - 1) {
    if (clamp_connectivity)
      want = n - 1;
    else
      throw std::invalid_argument(
          "density " + std::to_string(config.density) + " yields " + std::to_string(want) +
          " arcs for " + std::to_string(n) + " nodes; weak connectivity needs at least n-1 = " +
          std::to_string(n - 1));
  }
  if (want > n * (n - 1))
    throw std::invalid_argument("density exceeds the complete directed graph");
  Rng rng(derive_seed(config.seed, kGraphStream));
  return random_connected_graph(n, want, rng);
}

CtbnModel generate_cims(const DirectedGraph& graph, const GenConfig& config) {
  check_config(config, false);
  if (graph.node_count() != config.nodes)
    throw std::invalid_argument("graph node count does not match the configuration");

  CtbnModel model;
  model.graph = graph;
  const int n = config.nodes;
  const int m = config.cardinality;
  model.variables.resize(n);
  for (int k = 0; k < n; ++k)
    model.variables[k] = {"X" + std::to_string(k), m};

  Rng rng(derive_seed(config.seed, kCimStream));
  std::vector<double> gaps(m - 1);
  for (int k = 0; k < n; ++k) {
    QThetaParams p;
    p.target = k;
    p.m = m;
    p.parents = graph.parents_of(k);
    std::vector<int> cards;
    for (int parent : p.parents) cards.push_back(model.cardinality(parent));
    p.configs = ConfigSpace(cards);
    const int cells = p.configs.count() * m;
    p.q.assign(cells, 0.0);
    p.theta.assign(cells * m, 0.0);
    p.theta_defined.assign(cells, 1);
    for (int u = 0; u < p.configs.count(); ++u) {
      for (int x = 0; x < m; ++x) {
        p.q[u * m + x] = rng.uniform(config.rate_min, config.rate_max);
        if (m == 2) {
          p.theta[(u * m + x) * m + (1 - x)] = 1.0;
          continue;
        }
        double sum = 0;
        for (double& gp : gaps) {
          gp = rng.exponential(1.0);
          sum += gp;
        }
        int slot = 0;
        for (int x2 = 0; x2 < m; ++x2)
          if (x2 != x) p.theta[(u * m + x) * m + x2] = gaps[slot++] / sum;
      }
    }
    model.cims.push_back(params_to_cim(p));
  }

  model.initial.assign(n, std::vector<double>(m, 1.0 / m));
  return model;
}

CtbnModel generate_model(const GenConfig& config) {
  return generate_cims(generate_graph(config), config);
}

Trajectory sample_trajectory(const CtbnModel& model, double duration, std::uint64_t seed) {
  if (!(duration > 0)) throw std::invalid_argument("duration must be positive");
  Rng rng(seed);
  const int n = model.node_count();

  Trajectory tr;
  tr.duration = duration;
  tr.initial.resize(n);
  for (int k = 0; k < n; ++k)
    tr.initial[k] = rng.categorical(model.initial[k]);

  std::vector<int> state = tr.initial;
  std::vector<int> pstates;
  std::vector<double> weights;
  double t = 0;

  auto matrix_for = [&](int k) -> const IntensityMatrix& {
    const Cim& cim = model.cims[k];
    pstates.clear();
    for (int parent : cim.parents) pstates.push_back(state[parent]);
    return cim.at(cim.configs.index(pstates));
  };

  for (;;) {
    int winner = -1;
    double best_dt = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k) {
      const double q = matrix_for(k).exit_rate(state[k]);
      if (q <= 0) continue;
      const double dt = rng.exponential(q);
      if (dt < best_dt) {
        best_dt = dt;
        winner = k;
      }
    }
    if (winner < 0) {
      tr.duration = t;
      tr.ended_early = true;
      break;
    }
    if (t + best_dt > duration) break;
    t += best_dt;

    const IntensityMatrix& im = matrix_for(winner);
    const int x = state[winner];
    weights.assign(im.row(x).begin(), im.row(x).end());
    weights[x] = 0;
    const int dest = rng.categorical(weights);
    state[winner] = dest;
    tr.events.push_back({t, winner, dest});
  }
  return tr;
}

Dataset sample_dataset(const CtbnModel& model, const GenConfig& config) {
  check_config(config, true);
  if (model.node_count() != config.nodes)
    throw std::invalid_argument("model node count does not match the configuration");
  Dataset ds;
  ds.variables = model.variables;
  ds.trajectories.reserve(config.trajectories);
  for (int i = 0; i < config.trajectories; ++i)
    ds.trajectories.push_back(sample_trajectory(
        model, config.mean_duration, derive_seed(config.seed, kTrajectoryStream, i)));
  return ds;
}

}  // namespace ctbn
