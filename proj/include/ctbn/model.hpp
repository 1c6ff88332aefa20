#ifndef CTBN_MODEL_HPP
#define CTBN_MODEL_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ctbn/config_space.hpp"

namespace ctbn {

struct VariableSpec {
  std::string name;
  int cardinality = 2;
  bool operator==(const VariableSpec&) const = default;
};

struct Arc {
  int parent = -1;
  int child = -1;
  auto operator<=>(const Arc&) const = default;
};

/* Directed graph over variable indices.  Cycles are allowed; self-loops
 * and duplicate arcs are not.  Arcs are kept sorted. */
class DirectedGraph {
 public:
  DirectedGraph() = default;
  explicit DirectedGraph(int node_count) : n_(node_count) {}

  int node_count() const { return n_; }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  const std::vector<Arc>& arcs() const { return arcs_; }

  bool has_arc(int parent, int child) const;
  void add_arc(int parent, int child);
  std::vector<int> parents_of(int child) const;
  bool weakly_connected() const;

  bool operator==(const DirectedGraph&) const = default;

 private:
  int n_ = 0;
  std::vector<Arc> arcs_;
};

class IntensityMatrix {
 public:
  IntensityMatrix() = default;
  explicit IntensityMatrix(int side) : m_(side), a_(side * side, 0.0) {}

  int side() const { return m_; }
  double operator()(int i, int j) const { return a_[i * m_ + j]; }
  double& operator()(int i, int j) { return a_[i * m_ + j]; }
  double exit_rate(int state) const { return -a_[state * m_ + state]; }
  std::span<const double> row(int i) const { return {a_.data() + i * m_, static_cast<std::size_t>(m_)}; }
  const std::vector<double>& data() const { return a_; }
  std::vector<double>& data() { return a_; }

  bool operator==(const IntensityMatrix&) const = default;

 private:
  int m_ = 0;
  std::vector<double> a_;
};

/* Conditional intensity matrices of one variable: one matrix per
 * configuration of its parent set (parents listed in ascending index
 * order, first parent = fastest varying digit). */
struct Cim {
  int target = -1;
  std::vector<int> parents;
  ConfigSpace configs;
  std::vector<IntensityMatrix> matrices;

  const IntensityMatrix& at(int config) const { return matrices[config]; }
};

/* The q/theta decomposition of a Cim: exit rates q[u][x] and embedded
 * jump probabilities theta[u][x][x'].  Rows with undefined theta (zero
 * exit rate) are tracked explicitly. */
struct QThetaParams {
  int target = -1;
  int m = 0;
  std::vector<int> parents;
  ConfigSpace configs;
  std::vector<double> q;                    // [config * m + x]
  std::vector<double> theta;                // [(config * m + x) * m + x']
  std::vector<std::uint8_t> theta_defined;  // [config * m + x]

  double q_at(int u, int x) const { return q[u * m + x]; }
  double theta_at(int u, int x, int x2) const { return theta[(u * m + x) * m + x2]; }
};

struct CtbnModel {
  std::vector<VariableSpec> variables;
  DirectedGraph graph;
  std::vector<Cim> cims;                     // cims[k] belongs to variables[k]
  std::vector<std::vector<double>> initial;  // per-variable categorical weights

  int node_count() const { return static_cast<int>(variables.size()); }
  int cardinality(int k) const { return variables[k].cardinality; }
};

struct Violation {
  int node = -1;    // -1 when not tied to a node
  int config = -1;  // -1 when not tied to a parent configuration
  std::string what;
};

std::string format_violation(const Violation& v, const CtbnModel* model = nullptr);

/* Structural and numeric checks: rows sum to zero, off-diagonals
 * nonnegative, diagonals nonpositive, parent lists match the graph,
 * matrix counts match the configuration space, initial weights valid.
 * Absorbing rows (all zero) are legal and produce no violation. */
std::vector<Violation> validate_model(const CtbnModel& model, double tol = 1e-9);

std::vector<Violation> matrix_violations(const IntensityMatrix& im, double tol = 1e-9,
                                         int node = -1, int config = -1);

QThetaParams cim_to_params(const Cim& cim, const std::vector<VariableSpec>& variables);

/* Inverse of cim_to_params; throws std::invalid_argument when a defined
 * theta row does not sum to one or carries diagonal mass. */
Cim params_to_cim(const QThetaParams& params, double tol = 1e-9);

}  // namespace ctbn

#endif
