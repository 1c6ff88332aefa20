#ifndef CTBN_EVAL_HPP
#define CTBN_EVAL_HPP

#include <string>

#include "ctbn/scoring.hpp"

namespace ctbn {

struct GraphComparison {
  long long tp = 0;
  long long fp = 0;
  long long fn = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

/* Arc-set confusion against a reference graph over the same nodes.  Two
 * empty graphs score a perfect 1; an empty learned graph against a
 * nonempty reference scores 0. */
GraphComparison compare_graphs(const DirectedGraph& learned, const DirectedGraph& truth);

/* (bic_first - bic_second) / bic_first * 100; throws when bic_first is
 * zero. */
double delta_bic_percent(double bic_first, double bic_second);

struct EvalReport {
  std::string algorithm;
  GraphComparison arcs;
  double bic = 0;
  double wall_seconds = 0;
};

EvalReport evaluate_structure(const std::string& algorithm, const DirectedGraph& learned,
                              const DirectedGraph& truth, const Dataset& ds,
                              double wall_seconds = 0);

}  // namespace ctbn

#endif
