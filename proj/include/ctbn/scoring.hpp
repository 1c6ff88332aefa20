#ifndef CTBN_SCORING_HPP
#define CTBN_SCORING_HPP

#include <vector>

#include "ctbn/stats.hpp"

namespace ctbn {

/* Marginal likelihood of the exit rates: per cell, a Gamma(alpha + 1, tau)
 * prior integrated against the exponential sojourn evidence. */
double log_ml_q(const SuffStats& s, const Hyperparams& hp);

/* Marginal likelihood of the jump rows: Dirichlet-multinomial with the
 * per-destination weight alpha / (m - 1). */
double log_ml_theta(const SuffStats& s, const Hyperparams& hp);

struct NodeScore {
  int node = -1;
  std::vector<int> parents;
  double log_ml_q = 0;
  double log_ml_theta = 0;
  double log_prior = 0;
  double total = 0;
};

NodeScore node_score_from_stats(const SuffStats& s, const Hyperparams& hp,
                                double parent_penalty = 0.0);

NodeScore node_score(const Dataset& ds, int node, std::vector<int> parents,
                     const Hyperparams& hp, double parent_penalty = 0.0);

/* Exact trajectory log density under the model; -inf when an observed
 * transition has zero intensity. */
double log_likelihood(const CtbnModel& model, const Dataset& ds);

/* Log likelihood of the dataset under the maximum likelihood intensities
 * implied by the given parent sets. */
double mle_log_likelihood(const DirectedGraph& graph, const Dataset& ds);

/* Free parameters of a structure: per node, configurations x m x (m-1). */
long long param_count(const DirectedGraph& graph, const std::vector<VariableSpec>& variables);

/* mle log likelihood minus (k/2) ln(total transitions); throws when the
 * dataset contains no transitions. */
double model_bic(const DirectedGraph& graph, const Dataset& ds);

}  // namespace ctbn

#endif
