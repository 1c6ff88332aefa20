#include "ctbn/eval.hpp"

#include <cmath>
#include <stdexcept>

namespace ctbn {

GraphComparison compare_graphs(const DirectedGraph& learned, const DirectedGraph& truth) {
  if (learned.node_count() != truth.node_count())
    throw std::invalid_argument("graphs are over different node counts");

  GraphComparison c;
  for (const Arc& a : learned.arcs()) {
    if (truth.has_arc(a.parent, a.child))
      ++c.tp;
    else
      ++c.fp;
  }
  c.fn = truth.arc_count() - c.tp;

  if (learned.arc_count() == 0 && truth.arc_count() == 0) {
    c.precision = c.recall = c.f1 = 1.0;
    return c;
  }
  c.precision = learned.arc_count() > 0
                    ? static_cast<double>(c.tp) / static_cast<double>(learned.arc_count())
                    : 0.0;
  c.recall = truth.arc_count() > 0
                 ? static_cast<double>(c.tp) / static_cast<double>(truth.arc_count())
                 : 0.0;
  const double denom = c.precision + c.recall;
  c.f1 = denom > 0 ? 2 * c.precision * c.recall / denom : 0.0;
  return c;
}

double delta_bic_percent(double bic_first, double bic_second) {
  if (bic_first == 0) throw std::invalid_argument("reference score is zero");
  return (bic_first - bic_second) / bic_first * 100.0;
}

EvalReport evaluate_structure(const std::string& algorithm, const DirectedGraph& learned,
                              const DirectedGraph& truth, const Dataset& ds,
                              double wall_seconds) {
  EvalReport r;
  r.algorithm = algorithm;
  r.arcs = compare_graphs(learned, truth);
  r.bic = model_bic(learned, ds);
  r.wall_seconds = wall_seconds;
  return r;
}

}  // namespace ctbn
