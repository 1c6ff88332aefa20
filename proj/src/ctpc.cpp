#include "ctbn/ctpc.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>

#include "parallel.hpp"

namespace ctbn {

namespace {

struct Context {
  int e = 0;  // configuration index in the extended statistics
  int m = 0;
};

Context locate(const SuffStats& ext, const SuffStats& base, int y, int s) {
  const int pos = extra_cond_position(ext.cond, base.cond);
  Context ctx;
  ctx.e = base.configs.expand(s, pos, ext.configs.card(pos), y);
  ctx.m = base.target_card;
  return ctx;
}

void check_level(double level) {
  if (!(level > 0) || !(level < 1))
    throw std::invalid_argument("significance level must lie in (0, 1)");
}

}  // namespace

Decision f_test(const SuffStats& ext, const SuffStats& base, int x, int y, int s,
                double level, TestRecord* rec) {
  check_level(level);
  const Context ctx = locate(ext, base, y, s);
  TestRecord out;
  out.kind = 'F';
  out.y = y;
  out.s = s;
  out.x = x;

  const double r1 = ext.m_row(ctx.e, x);
  const double r2 = base.m_row(s, x);
  const double t1 = ext.t(ctx.e, x);
  const double t2 = base.t(s, x);
  if (r1 < 1 || r2 < 1 || t1 <= 0 || t2 <= 0) {
    out.decision = Decision::insufficient;
  } else {
    const double stat = (r2 / t2) / (r1 / t1);
    boost::math::fisher_f_distribution<double> dist(r1, r2);
    out.lower = boost::math::quantile(dist, level / 2);
    out.upper = boost::math::quantile(dist, 1 - level / 2);
    out.statistic = stat;
    out.decision =
        (stat < out.lower || stat > out.upper) ? Decision::reject : Decision::accept;
  }
  if (rec) *rec = out;
  return out.decision;
}

Decision chi2_test(const SuffStats& ext, const SuffStats& base, int x, int y, int s,
                   double level, TestRecord* rec) {
  check_level(level);
  const Context ctx = locate(ext, base, y, s);
  TestRecord out;
  out.kind = 'X';
  out.y = y;
  out.s = s;
  out.x = x;

  const double n1 = ext.m_row(ctx.e, x);
  const double n2 = base.m_row(s, x);
  if (n1 < 1 || n2 < 1) {
    out.decision = Decision::insufficient;
  } else {
    const double k = std::sqrt(n2 / n1);
    const double l = 1 / k;
    double stat = 0;
    for (int x2 = 0; x2 < ctx.m; ++x2) {
      if (x2 == x) continue;
      const double me = ext.m(ctx.e, x, x2);
      const double mb = base.m(s, x, x2);
      if (me + mb == 0) continue;
      const double d = k * me - l * mb;
      stat += d * d / (me + mb);
    }
    boost::math::chi_squared_distribution<double> dist(ctx.m - 1);
    out.statistic = stat;
    out.upper = boost::math::quantile(dist, 1 - level);
    out.decision = stat > out.upper ? Decision::reject : Decision::accept;
  }
  if (rec) *rec = out;
  return out.decision;
}

Decision ks_test(const SuffStats& ext, const SuffStats& base, int x, int y, int s,
                 double level, TestRecord* rec) {
  check_level(level);
  const Context ctx = locate(ext, base, y, s);
  TestRecord out;
  out.kind = 'K';
  out.y = y;
  out.s = s;
  out.x = x;

  const double n1 = ext.m_row(ctx.e, x);
  const double n2 = base.m_row(s, x);
  if (n1 < 1 || n2 < 1) {
    out.decision = Decision::insufficient;
  } else {
    double cum_e = 0, cum_b = 0, d = 0;
    for (int x2 = 0; x2 < ctx.m; ++x2) {
      if (x2 == x) continue;
      cum_e += ext.m(ctx.e, x, x2) / n1;
      cum_b += base.m(s, x, x2) / n2;
      d = std::max(d, std::abs(cum_e - cum_b));
    }
    const double c = std::sqrt(-std::log(level / 2) / 2);
    out.statistic = d;
    out.upper = c * std::sqrt((n1 + n2) / (n1 * n2));
    out.decision = d > out.upper ? Decision::reject : Decision::accept;
  }
  if (rec) *rec = out;
  return out.decision;
}

IndependenceVerdict test_independence(const Dataset& ds, int xi, int xj,
                                      const std::vector<int>& sepset,
                                      const CtpcConfig& config) {
  if (xi == xj) throw std::invalid_argument("cannot test a variable against itself");
  for (int v : sepset)
    if (v == xi || v == xj)
      throw std::invalid_argument("separating set overlaps the tested pair");

  IndependenceVerdict verdict;
  verdict.xi = xi;
  verdict.xj = xj;
  verdict.sepset = sepset;
  std::sort(verdict.sepset.begin(), verdict.sepset.end());

  const SuffStats base = compute_suffstats(ds, xi, verdict.sepset);
  std::vector<int> ext_cond = verdict.sepset;
  ext_cond.push_back(xj);
  const SuffStats ext = compute_suffstats(ds, xi, ext_cond);

  const int m = ds.variables[xi].cardinality;
  const int card_j = ds.variables[xj].cardinality;
  const bool theta_applicable = m > 2;

  TestRecord rec;
  for (int y = 0; y < card_j; ++y) {
    for (int s = 0; s < base.configs.count(); ++s) {
      for (int x = 0; x < m; ++x) {
        Decision d = f_test(ext, base, x, y, s, config.significance_q, &rec);
        verdict.records.push_back(rec);
        if (d == Decision::reject) return verdict;
        if (theta_applicable) {
          d = config.theta_test == ThetaTestKind::chi2
                  ? chi2_test(ext, base, x, y, s, config.significance_theta, &rec)
                  : ks_test(ext, base, x, y, s, config.significance_theta, &rec);
          verdict.records.push_back(rec);
          if (d == Decision::reject) return verdict;
        }
      }
    }
  }
  verdict.independent = true;
  return verdict;
}

namespace {

/* Lexicographic size-k subsets; fn returning true stops the walk. */
bool each_combination(const std::vector<int>& items, int size,
                      const std::function<bool(const std::vector<int>&)>& fn) {
  const int c = static_cast<int>(items.size());
  std::vector<int> pick(size);
  for (int i = 0; i < size; ++i) pick[i] = i;
  std::vector<int> subset(size);
  for (;;) {
    for (int i = 0; i < size; ++i) subset[i] = items[pick[i]];
    if (fn(subset)) return true;
    if (size == 0) return false;
    int i = size - 1;
    while (i >= 0 && pick[i] == c - size + i) --i;
    if (i < 0) return false;
    ++pick[i];
    for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
  }
}

}  // namespace

CtpcNodeResult learn_parents_ctpc(const Dataset& ds, int node, const CtpcConfig& config) {
  if (node < 0 || node >= ds.node_count()) throw std::invalid_argument("node out of range");

  CtpcNodeResult result;
  result.node = node;

  std::vector<int> survivors;
  for (int v = 0; v < ds.node_count(); ++v)
    if (v != node) survivors.push_back(v);

  for (int b = 0;; ++b) {
    if (config.max_sepset && b > *config.max_sepset) break;
    if (b > static_cast<int>(survivors.size()) - 1) break;

    const std::vector<int> level_snapshot = survivors;
    for (int xj : level_snapshot) {
      auto it = std::find(survivors.begin(), survivors.end(), xj);
      if (it == survivors.end()) continue;  // removed earlier at this level
      std::vector<int> others;
      for (int v : survivors)
        if (v != xj) others.push_back(v);
      if (static_cast<int>(others.size()) < b) continue;

      bool removed = each_combination(others, b, [&](const std::vector<int>& sepset) {
        IndependenceVerdict verdict = test_independence(ds, node, xj, sepset, config);
        result.tests_run += static_cast<long long>(verdict.records.size());
        const bool independent = verdict.independent;
        result.verdicts.push_back(std::move(verdict));
        return independent;
      });
      if (removed) survivors.erase(std::find(survivors.begin(), survivors.end(), xj));
    }
  }

  result.parents = survivors;
  return result;
}

CtpcResult learn_structure_ctpc(const Dataset& ds, const CtpcConfig& config, int jobs) {
  const int n = ds.node_count();
  CtpcResult result;
  result.graph = DirectedGraph(n);
  result.nodes.resize(n);

  detail::parallel_for(n, jobs, [&](int node) {
    result.nodes[node] = learn_parents_ctpc(ds, node, config);
  });

  for (int node = 0; node < n; ++node)
    for (int p : result.nodes[node].parents) result.graph.add_arc(p, node);
  return result;
}

}  // namespace ctbn
