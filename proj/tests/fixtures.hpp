#ifndef CTBN_TESTS_FIXTURES_HPP
#define CTBN_TESTS_FIXTURES_HPP

#include <vector>

#include "ctbn/generator.hpp"
#include "ctbn/model.hpp"
#include "ctbn/trajectory.hpp"

namespace fixtures {

inline ctbn::IntensityMatrix matrix2(double q0, double q1) {
  ctbn::IntensityMatrix im(2);
  im(0, 0) = -q0;
  im(0, 1) = q0;
  im(1, 0) = q1;
  im(1, 1) = -q1;
  return im;
}

inline ctbn::Cim make_cim(int target, std::vector<int> parents,
                          const std::vector<ctbn::VariableSpec>& variables,
                          std::vector<ctbn::IntensityMatrix> matrices) {
  ctbn::Cim cim;
  cim.target = target;
  cim.parents = std::move(parents);
  std::vector<int> cards;
  for (int p : cim.parents) cards.push_back(variables[p].cardinality);
  cim.configs = ctbn::ConfigSpace(cards);
  cim.matrices = std::move(matrices);
  return cim;
}

inline void uniform_initial(ctbn::CtbnModel& model) {
  model.initial.clear();
  for (const auto& v : model.variables)
    model.initial.push_back(std::vector<double>(v.cardinality, 1.0 / v.cardinality));
}

/* X0 -> X1, both binary; X1's exit rates swing by a factor of ten with
 * the parent state, X0 flips at unit rate. */
inline ctbn::CtbnModel chain2() {
  ctbn::CtbnModel model;
  model.variables = {{"X0", 2}, {"X1", 2}};
  model.graph = ctbn::DirectedGraph(2);
  model.graph.add_arc(0, 1);
  model.cims.push_back(make_cim(0, {}, model.variables, {matrix2(1, 1)}));
  model.cims.push_back(
      make_cim(1, {0}, model.variables, {matrix2(0.5, 5), matrix2(5, 0.5)}));
  uniform_initial(model);
  return model;
}

/* Two binary variables with no arcs and distinct flip rates. */
inline ctbn::CtbnModel indep2() {
  ctbn::CtbnModel model;
  model.variables = {{"X0", 2}, {"X1", 2}};
  model.graph = ctbn::DirectedGraph(2);
  model.cims.push_back(make_cim(0, {}, model.variables, {matrix2(1, 1)}));
  model.cims.push_back(make_cim(1, {}, model.variables, {matrix2(2, 3)}));
  uniform_initial(model);
  return model;
}

/* Three binary variables on the directed cycle 0 -> 1 -> 2 -> 0 with
 * strong pairwise drive: each variable is pushed hard in one direction
 * by its parent and barely moves otherwise. */
inline ctbn::CtbnModel cycle3() {
  ctbn::CtbnModel model;
  model.variables = {{"X0", 2}, {"X1", 2}, {"X2", 2}};
  model.graph = ctbn::DirectedGraph(3);
  model.graph.add_arc(0, 1);
  model.graph.add_arc(1, 2);
  model.graph.add_arc(2, 0);
  model.cims.push_back(
      make_cim(0, {2}, model.variables, {matrix2(0.01, 10), matrix2(2, 0.01)}));
  model.cims.push_back(
      make_cim(1, {0}, model.variables, {matrix2(0.01, 0.40), matrix2(2, 0.01)}));
  model.cims.push_back(
      make_cim(2, {1}, model.variables, {matrix2(10, 0.01), matrix2(0.01, 5)}));
  uniform_initial(model);
  return model;
}

inline ctbn::Dataset sample(const ctbn::CtbnModel& model, int trajectories, double duration,
                            std::uint64_t seed) {
  ctbn::Dataset ds;
  ds.variables = model.variables;
  for (int i = 0; i < trajectories; ++i)
    ds.trajectories.push_back(
        ctbn::sample_trajectory(model, duration, ctbn::derive_seed(seed, 0xF1, i)));
  return ds;
}

}  // namespace fixtures

#endif
