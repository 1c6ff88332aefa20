#include "ctbn/model.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace ctbn {

bool DirectedGraph::has_arc(int parent, int child) const {
  return std::binary_search(arcs_.begin(), arcs_.end(), Arc{parent, child});
}

void DirectedGraph::add_arc(int parent, int child) {
  if (parent < 0 || parent >= n_ || child < 0 || child >= n_)
    throw std::invalid_argument("arc endpoint out of range");
  if (parent == child) throw std::invalid_argument("self-loop not allowed");
  const Arc a{parent, child};
  auto it = std::lower_bound(arcs_.begin(), arcs_.end(), a);
  if (it != arcs_.end() && *it == a) throw std::invalid_argument("duplicate arc");
  arcs_.insert(it, a);
}

std::vector<int> DirectedGraph::parents_of(int child) const {
  std::vector<int> out;
  for (const Arc& a : arcs_)
    if (a.child == child) out.push_back(a.parent);
  std::sort(out.begin(), out.end());
  return out;
}

bool DirectedGraph::weakly_connected() const {
  if (n_ <= 1) return true;
  std::vector<std::vector<int>> adj(n_);
  for (const Arc& a : arcs_) {
    adj[a.parent].push_back(a.child);
    adj[a.child].push_back(a.parent);
  }
  std::vector<char> seen(n_, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        q.push(w);
      }
  }
  return reached == n_;
}

std::string format_violation(const Violation& v, const CtbnModel* model) {
  std::string out;
  if (v.node >= 0) {
    out += "node ";
    if (model && v.node < model->node_count())
      out += model->variables[v.node].name;
    else
      out += std::to_string(v.node);
    if (v.config >= 0) out += ", parent configuration " + std::to_string(v.config);
    out += ": ";
  }
  out += v.what;
  return out;
}

std::vector<Violation> matrix_violations(const IntensityMatrix& im, double tol,
                                         int node, int config) {
  std::vector<Violation> out;
  const int m = im.side();
  for (int i = 0; i < m; ++i) {
    double row_sum = 0;
    double scale = 1;
    for (int j = 0; j < m; ++j) {
      const double v = im(i, j);
      row_sum += v;
      scale = std::max(scale, std::abs(v));
      if (!std::isfinite(v))
        out.push_back({node, config, "non-finite entry in row " + std::to_string(i)});
      else if (i == j && v > tol)
        out.push_back({node, config, "positive diagonal in row " + std::to_string(i)});
      else if (i != j && v < -tol)
        out.push_back({node, config, "negative off-diagonal in row " + std::to_string(i)});
    }
    if (std::abs(row_sum) > tol * scale)
      out.push_back({node, config, "row " + std::to_string(i) + " does not sum to zero"});
  }
  return out;
}

static void append(std::vector<Violation>& to, std::vector<Violation>&& from) {
  for (auto& v : from) to.push_back(std::move(v));
}

std::vector<Violation> validate_model(const CtbnModel& model, double tol) {
  std::vector<Violation> out;
  const int n = model.node_count();

  for (int k = 0; k < n; ++k)
    if (model.variables[k].cardinality < 2)
      out.push_back({k, -1, "cardinality must be at least 2"});
  for (int k = 0; k < n; ++k)
    for (int j = k + 1; j < n; ++j)
      if (model.variables[k].name == model.variables[j].name)
        out.push_back({j, -1, "duplicate variable name"});

  if (model.graph.node_count() != n)
    out.push_back({-1, -1, "graph node count does not match variable count"});

  if (static_cast<int>(model.cims.size()) != n) {
    out.push_back({-1, -1, "expected one conditional intensity block per variable"});
    return out;
  }
  if (static_cast<int>(model.initial.size()) != n)
    out.push_back({-1, -1, "expected one initial weight vector per variable"});

  for (int k = 0; k < n; ++k) {
    const Cim& cim = model.cims[k];
    const int m = model.cardinality(k);
    if (cim.target != k) out.push_back({k, -1, "conditional intensity block bound to wrong variable"});
    if (model.graph.node_count() == n && cim.parents != model.graph.parents_of(k)) {
      out.push_back({k, -1, "parent list does not match the graph"});
      continue;
    }
    int expected = 1;
    for (int p : cim.parents) expected *= model.cardinality(p);
    if (static_cast<int>(cim.matrices.size()) != expected) {
      out.push_back({k, -1, "matrix count does not match the parent configuration count"});
      continue;
    }
    for (int u = 0; u < expected; ++u) {
      if (cim.matrices[u].side() != m) {
        out.push_back({k, u, "matrix side does not match the variable cardinality"});
        continue;
      }
      append(out, matrix_violations(cim.matrices[u], tol, k, u));
    }
  }

  for (int k = 0; k < n && k < static_cast<int>(model.initial.size()); ++k) {
    const auto& w = model.initial[k];
    if (static_cast<int>(w.size()) != model.cardinality(k)) {
      out.push_back({k, -1, "initial weight vector has wrong length"});
      continue;
    }
    double sum = 0;
    bool bad = false;
    for (double x : w) {
      if (!(x >= 0) || !std::isfinite(x)) bad = true;
      sum += x;
    }
    if (bad)
      out.push_back({k, -1, "initial weights must be finite and nonnegative"});
    else if (std::abs(sum - 1.0) > tol)
      out.push_back({k, -1, "initial weights do not sum to one"});
  }

  return out;
}

QThetaParams cim_to_params(const Cim& cim, const std::vector<VariableSpec>& variables) {
  QThetaParams p;
  p.target = cim.target;
  p.m = variables[cim.target].cardinality;
  p.parents = cim.parents;
  p.configs = cim.configs;
  const int cells = p.configs.count() * p.m;
  p.q.assign(cells, 0.0);
  p.theta.assign(cells * p.m, 0.0);
  p.theta_defined.assign(cells, 0);
  for (int u = 0; u < p.configs.count(); ++u) {
    const IntensityMatrix& im = cim.matrices[u];
    for (int x = 0; x < p.m; ++x) {
      const double qx = im.exit_rate(x);
      p.q[u * p.m + x] = qx;
      if (qx > 0) {
        p.theta_defined[u * p.m + x] = 1;
        for (int x2 = 0; x2 < p.m; ++x2)
          if (x2 != x) p.theta[(u * p.m + x) * p.m + x2] = im(x, x2) / qx;
      }
    }
  }
  return p;
}

Cim params_to_cim(const QThetaParams& params, double tol) {
  Cim cim;
  cim.target = params.target;
  cim.parents = params.parents;
  cim.configs = params.configs;
  const int m = params.m;
  cim.matrices.assign(params.configs.count(), IntensityMatrix(m));
  for (int u = 0; u < params.configs.count(); ++u) {
    IntensityMatrix& im = cim.matrices[u];
    for (int x = 0; x < m; ++x) {
      const double qx = params.q_at(u, x);
      if (qx < 0) throw std::invalid_argument("negative exit rate");
      im(x, x) = -qx;
      if (!params.theta_defined[u * m + x]) {
        if (qx > 0) throw std::invalid_argument("positive exit rate with undefined theta row");
        continue;
      }
      if (params.theta_at(u, x, x) != 0)
        throw std::invalid_argument("theta row carries diagonal mass");
      double sum = 0;
      for (int x2 = 0; x2 < m; ++x2) {
        if (x2 == x) continue;
        const double t = params.theta_at(u, x, x2);
        if (t < 0) throw std::invalid_argument("negative theta entry");
        sum += t;
        im(x, x2) = qx * t;
      }
      if (std::abs(sum - 1.0) > tol)
        throw std::invalid_argument("theta row does not sum to one");
    }
  }
  return cim;
}

}  // namespace ctbn
