#ifndef CTBN_CTPC_HPP
#define CTBN_CTPC_HPP

#include <optional>

#include "ctbn/stats.hpp"

namespace ctbn {

enum class ThetaTestKind { chi2, ks };

struct CtpcConfig {
  double significance_q = 0.1;
  double significance_theta = 0.1;
  ThetaTestKind theta_test = ThetaTestKind::chi2;
  std::optional<int> max_sepset{};  // cap on separating set size, unbounded by default
};

enum class Decision { accept, reject, insufficient };

/* One hypothesis test on a single (candidate state y, base configuration
 * s, target state x) context.  lower/upper bound the acceptance region;
 * tests with a one-sided rejection rule leave lower at zero. */
struct TestRecord {
  char kind = '?';  // 'F' exit rates, 'X' chi-squared jump rows, 'K' KS jump rows
  int y = -1;
  int s = -1;
  int x = -1;
  double statistic = 0;
  double lower = 0;
  double upper = 0;
  Decision decision = Decision::insufficient;
};

/* Equality of exit rates q_{x | s} vs q_{x | y, s}: the rate ratio is
 * F-distributed with the two transition counts as degrees of freedom.
 * Contexts with no observed exits on either side are recorded as
 * `insufficient` and never reject. */
Decision f_test(const SuffStats& ext, const SuffStats& base, int x, int y, int s,
                double level, TestRecord* rec = nullptr);

/* Two-sample chi-squared homogeneity test on the jump count rows. */
Decision chi2_test(const SuffStats& ext, const SuffStats& base, int x, int y, int s,
                   double level, TestRecord* rec = nullptr);

/* Two-sample Kolmogorov-Smirnov test on the cumulative jump
 * distributions, destinations taken in ascending state order. */
Decision ks_test(const SuffStats& ext, const SuffStats& base, int x, int y, int s,
                 double level, TestRecord* rec = nullptr);

struct IndependenceVerdict {
  int xi = -1;
  int xj = -1;
  std::vector<int> sepset;
  bool independent = false;
  std::vector<TestRecord> records;
};

/* Tests whether xj can be dropped from xi's conditioning set given the
 * separating set.  Only statistics of xi are consumed; xj and the
 * separating set enter through the conditioning configuration.  The jump
 * row test is skipped for binary targets, whose single destination makes
 * the row degenerate. */
IndependenceVerdict test_independence(const Dataset& ds, int xi, int xj,
                                      const std::vector<int>& sepset,
                                      const CtpcConfig& config);

struct CtpcNodeResult {
  int node = -1;
  std::vector<int> parents;
  std::vector<IndependenceVerdict> verdicts;
  long long tests_run = 0;
};

/* Parent search by constraint elimination: starting from all other
 * variables, grows the separating set size level by level and removes a
 * candidate as soon as some subset of the surviving candidates separates
 * it from the target. */
CtpcNodeResult learn_parents_ctpc(const Dataset& ds, int node, const CtpcConfig& config);

struct CtpcResult {
  DirectedGraph graph;
  std::vector<CtpcNodeResult> nodes;
};

CtpcResult learn_structure_ctpc(const Dataset& ds, const CtpcConfig& config, int jobs = 1);

}  // namespace ctbn

#endif
