#ifndef CTBN_STATS_HPP
#define CTBN_STATS_HPP

#include <vector>

#include "ctbn/model.hpp"
#include "ctbn/trajectory.hpp"

namespace ctbn {

struct Hyperparams {
  double alpha = 1.0;  // pseudo-transitions per (configuration, state) cell
  double tau = 1.0;    // pseudo-time per cell
  /* When set, alpha is split evenly across the parent configurations of
   * the scored family instead of being applied per configuration. */
  bool alpha_per_family = false;
};

/* Time spent and transition counts for one target variable, broken down
 * by the joint configuration of a conditioning set.  The conditioning
 * set is any subset of the other variables, not necessarily the target's
 * parents. */
struct SuffStats {
  int target = -1;
  int target_card = 0;
  std::vector<int> cond;  // ascending variable indices
  ConfigSpace configs;
  std::vector<double> time;    // [config * m + x]
  std::vector<double> counts;  // [(config * m + x) * m + x'], diagonal zero

  double t(int u, int x) const { return time[u * target_card + x]; }
  double& t(int u, int x) { return time[u * target_card + x]; }
  double m(int u, int x, int x2) const { return counts[(u * target_card + x) * target_card + x2]; }
  double& m(int u, int x, int x2) { return counts[(u * target_card + x) * target_card + x2]; }

  double m_row(int u, int x) const {
    double s = 0;
    for (int x2 = 0; x2 < target_card; ++x2) s += m(u, x, x2);
    return s;
  }

  double total_time() const;
  double total_transitions() const;
};

SuffStats make_suffstats_shape(const std::vector<VariableSpec>& variables, int target,
                               std::vector<int> cond);

/* Single pass over the events of each trajectory.  The segment after the
 * last event contributes time but no transition. */
SuffStats compute_suffstats(const Dataset& ds, int target, std::vector<int> cond);

void accumulate_trajectory(SuffStats& s, const std::vector<VariableSpec>& variables,
                           const Trajectory& tr);

/* Elementwise sum; shapes must match exactly. */
void merge_suffstats(SuffStats& into, const SuffStats& other);

/* True when marginalizing `fine` over its one extra conditioning variable
 * reproduces `coarse` within tol.  Throws std::invalid_argument when the
 * two blocks are not in that relationship. */
bool aggregate_check(const SuffStats& fine, const SuffStats& coarse, double tol = 1e-9);

/* Position of the single extra conditioning variable of `fine` relative
 * to `coarse`; throws when `fine.cond` is not `coarse.cond` plus one. */
int extra_cond_position(const std::vector<int>& fine_cond, const std::vector<int>& coarse_cond);

struct MleResult {
  QThetaParams params;  // q is zero and theta undefined where unobserved
  Cim cim;
  std::vector<std::uint8_t> q_observed;  // per (config, state): time > 0
};

MleResult mle_cim(const SuffStats& s);

struct PosteriorParams {
  std::vector<double> gamma_shape;  // [config * m + x]
  std::vector<double> gamma_rate;   // [config * m + x]
  std::vector<double> dirichlet;    // [(config * m + x) * m + x'], diagonal zero
};

/* Conjugate update of the Gamma/Dirichlet prior by the observed
 * statistics; throws on nonpositive hyperparameters. */
PosteriorParams posterior_params(const SuffStats& s, const Hyperparams& hp);

}  // namespace ctbn

#endif
