#include "ctbn/scoring.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ctbn {

namespace {

double cell_alpha(const SuffStats& s, const Hyperparams& hp) {
  if (!(hp.alpha > 0) || !(hp.tau > 0))
    throw std::invalid_argument("hyperparameters must be positive");
  return hp.alpha_per_family ? hp.alpha / s.configs.count() : hp.alpha;
}

}  // namespace

double log_ml_q(const SuffStats& s, const Hyperparams& hp) {
  const double a = cell_alpha(s, hp);
  const double tau = hp.tau;
  double out = 0;
  for (int u = 0; u < s.configs.count(); ++u) {
    for (int x = 0; x < s.target_card; ++x) {
      const double M = s.m_row(u, x);
      const double T = s.t(u, x);
      out += std::lgamma(a + M + 1) - std::lgamma(a + 1);
      out += (a + 1) * std::log(tau) - (a + M + 1) * std::log(tau + T);
    }
  }
  return out;
}

double log_ml_theta(const SuffStats& s, const Hyperparams& hp) {
  const double a = cell_alpha(s, hp);
  const int m = s.target_card;
  const double a_dest = a / (m - 1);
  double out = 0;
  for (int u = 0; u < s.configs.count(); ++u) {
    for (int x = 0; x < m; ++x) {
      out += std::lgamma(a) - std::lgamma(a + s.m_row(u, x));
      for (int x2 = 0; x2 < m; ++x2) {
        if (x2 == x) continue;
        out += std::lgamma(a_dest + s.m(u, x, x2)) - std::lgamma(a_dest);
      }
    }
  }
  return out;
}

NodeScore node_score_from_stats(const SuffStats& s, const Hyperparams& hp,
                                double parent_penalty) {
  NodeScore score;
  score.node = s.target;
  score.parents = s.cond;
  score.log_ml_q = log_ml_q(s, hp);
  score.log_ml_theta = log_ml_theta(s, hp);
  score.log_prior = -parent_penalty * static_cast<double>(s.cond.size());
  score.total = score.log_ml_q + score.log_ml_theta + score.log_prior;
  return score;
}

NodeScore node_score(const Dataset& ds, int node, std::vector<int> parents,
                     const Hyperparams& hp, double parent_penalty) {
  return node_score_from_stats(compute_suffstats(ds, node, std::move(parents)), hp,
                               parent_penalty);
}

double log_likelihood(const CtbnModel& model, const Dataset& ds) {
  if (model.node_count() != ds.node_count())
    throw std::invalid_argument("model and dataset disagree on the variable count");
  const int n = model.node_count();
  double ll = 0;

  std::vector<int> state;
  std::vector<int> pstates;
  auto matrix_for = [&](int k) -> const IntensityMatrix& {
    const Cim& cim = model.cims[k];
    pstates.clear();
    for (int parent : cim.parents) pstates.push_back(state[parent]);
    return cim.at(cim.configs.index(pstates));
  };
  auto total_exit_rate = [&]() {
    double q = 0;
    for (int k = 0; k < n; ++k) q += matrix_for(k).exit_rate(state[k]);
    return q;
  };

  for (const Trajectory& tr : ds.trajectories) {
    state = tr.initial;
    double seg_start = 0;
    for (const TrajectoryEvent& ev : tr.events) {
      ll -= total_exit_rate() * (ev.time - seg_start);
      const double jump = matrix_for(ev.var)(state[ev.var], ev.state);
      if (!(jump > 0)) return -std::numeric_limits<double>::infinity();
      ll += std::log(jump);
      state[ev.var] = ev.state;
      seg_start = ev.time;
    }
    ll -= total_exit_rate() * (tr.duration - seg_start);
  }
  return ll;
}

double mle_log_likelihood(const DirectedGraph& graph, const Dataset& ds) {
  if (graph.node_count() != ds.node_count())
    throw std::invalid_argument("graph and dataset disagree on the variable count");
  double ll = 0;
  for (int k = 0; k < graph.node_count(); ++k) {
    const SuffStats s = compute_suffstats(ds, k, graph.parents_of(k));
    for (int u = 0; u < s.configs.count(); ++u) {
      for (int x = 0; x < s.target_card; ++x) {
        const double M = s.m_row(u, x);
        if (M <= 0) continue;
        const double T = s.t(u, x);
        ll += M * std::log(M / T) - M;
        for (int x2 = 0; x2 < s.target_card; ++x2) {
          const double c = s.m(u, x, x2);
          if (c > 0) ll += c * std::log(c / M);
        }
      }
    }
  }
  return ll;
}

long long param_count(const DirectedGraph& graph, const std::vector<VariableSpec>& variables) {
  long long k = 0;
  for (int node = 0; node < graph.node_count(); ++node) {
    long long configs = 1;
    for (int p : graph.parents_of(node)) configs *= variables[p].cardinality;
    const long long m = variables[node].cardinality;
    k += configs * m * (m - 1);
  }
  return k;
}

double model_bic(const DirectedGraph& graph, const Dataset& ds) {
  const long long psi = total_transitions(ds);
  if (psi == 0)
    throw std::invalid_argument("undefined on a dataset with no transitions");
  const double ll = mle_log_likelihood(graph, ds);
  return ll - 0.5 * static_cast<double>(param_count(graph, ds.variables)) *
                  std::log(static_cast<double>(psi));
}

}  // namespace ctbn
