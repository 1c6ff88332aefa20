#include "ctbn/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ctbn {

double SuffStats::total_time() const {
  double s = 0;
  for (double v : time) s += v;
  return s;
}

double SuffStats::total_transitions() const {
  double s = 0;
  for (double v : counts) s += v;
  return s;
}

SuffStats make_suffstats_shape(const std::vector<VariableSpec>& variables, int target,
                               std::vector<int> cond) {
  const int n = static_cast<int>(variables.size());
  if (target < 0 || target >= n) throw std::invalid_argument("target out of range");
  std::sort(cond.begin(), cond.end());
  for (std::size_t i = 0; i < cond.size(); ++i) {
    if (cond[i] < 0 || cond[i] >= n)
      throw std::invalid_argument("conditioning variable out of range");
    if (cond[i] == target)
      throw std::invalid_argument("target cannot appear in its conditioning set");
    if (i > 0 && cond[i] == cond[i - 1])
      throw std::invalid_argument("duplicate conditioning variable");
  }

  SuffStats s;
  s.target = target;
  s.target_card = variables[target].cardinality;
  s.cond = std::move(cond);
  std::vector<int> cards;
  cards.reserve(s.cond.size());
  for (int v : s.cond) cards.push_back(variables[v].cardinality);
  s.configs = ConfigSpace(cards);
  s.time.assign(static_cast<std::size_t>(s.configs.count()) * s.target_card, 0.0);
  s.counts.assign(s.time.size() * s.target_card, 0.0);
  return s;
}

void accumulate_trajectory(SuffStats& s, const std::vector<VariableSpec>& variables,
                           const Trajectory& tr) {
  std::vector<int> pos(variables.size(), -1);
  for (std::size_t i = 0; i < s.cond.size(); ++i) pos[s.cond[i]] = static_cast<int>(i);

  int x = tr.initial[s.target];
  int u = 0;
  for (std::size_t i = 0; i < s.cond.size(); ++i)
    u += tr.initial[s.cond[i]] * s.configs.stride(static_cast<int>(i));

  double seg_start = 0;
  for (const TrajectoryEvent& ev : tr.events) {
    if (ev.var == s.target) {
      s.t(u, x) += ev.time - seg_start;
      s.m(u, x, ev.state) += 1;
      x = ev.state;
      seg_start = ev.time;
    } else if (pos[ev.var] >= 0) {
      s.t(u, x) += ev.time - seg_start;
      u = s.configs.replace_digit(u, pos[ev.var], ev.state);
      seg_start = ev.time;
    }
  }
  s.t(u, x) += tr.duration - seg_start;
}

SuffStats compute_suffstats(const Dataset& ds, int target, std::vector<int> cond) {
  SuffStats s = make_suffstats_shape(ds.variables, target, std::move(cond));
  for (const Trajectory& tr : ds.trajectories) accumulate_trajectory(s, ds.variables, tr);
  return s;
}

void merge_suffstats(SuffStats& into, const SuffStats& other) {
  if (into.target != other.target || into.cond != other.cond ||
      into.target_card != other.target_card)
    throw std::invalid_argument("statistics shapes do not match");
  for (std::size_t i = 0; i < into.time.size(); ++i) into.time[i] += other.time[i];
  for (std::size_t i = 0; i < into.counts.size(); ++i) into.counts[i] += other.counts[i];
}

int extra_cond_position(const std::vector<int>& fine_cond, const std::vector<int>& coarse_cond) {
  if (fine_cond.size() != coarse_cond.size() + 1)
    throw std::invalid_argument("conditioning sets do not differ by exactly one variable");
  int extra = -1;
  std::size_t j = 0;
  for (std::size_t i = 0; i < fine_cond.size(); ++i) {
    if (j < coarse_cond.size() && fine_cond[i] == coarse_cond[j]) {
      ++j;
    } else if (extra < 0) {
      extra = static_cast<int>(i);
    } else {
      throw std::invalid_argument("conditioning sets do not differ by exactly one variable");
    }
  }
  if (extra < 0 || j != coarse_cond.size())
    throw std::invalid_argument("conditioning sets do not differ by exactly one variable");
  return extra;
}

bool aggregate_check(const SuffStats& fine, const SuffStats& coarse, double tol) {
  if (fine.target != coarse.target || fine.target_card != coarse.target_card)
    throw std::invalid_argument("statistics refer to different targets");
  const int pos = extra_cond_position(fine.cond, coarse.cond);
  const int extra_card = fine.configs.card(pos);
  const int m = fine.target_card;

  auto close = [tol](double a, double b) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
  };

  for (int u = 0; u < coarse.configs.count(); ++u) {
    for (int x = 0; x < m; ++x) {
      double t_sum = 0;
      for (int y = 0; y < extra_card; ++y)
        t_sum += fine.t(coarse.configs.expand(u, pos, extra_card, y), x);
      if (!close(t_sum, coarse.t(u, x))) return false;
      for (int x2 = 0; x2 < m; ++x2) {
        double m_sum = 0;
        for (int y = 0; y < extra_card; ++y)
          m_sum += fine.m(coarse.configs.expand(u, pos, extra_card, y), x, x2);
        if (!close(m_sum, coarse.m(u, x, x2))) return false;
      }
    }
  }
  return true;
}

MleResult mle_cim(const SuffStats& s) {
  MleResult r;
  QThetaParams& p = r.params;
  p.target = s.target;
  p.m = s.target_card;
  p.parents = s.cond;
  p.configs = s.configs;
  const int m = p.m;
  const int cells = s.configs.count() * m;
  p.q.assign(cells, 0.0);
  p.theta.assign(static_cast<std::size_t>(cells) * m, 0.0);
  p.theta_defined.assign(cells, 0);
  r.q_observed.assign(cells, 0);

  for (int u = 0; u < s.configs.count(); ++u) {
    for (int x = 0; x < m; ++x) {
      const double T = s.t(u, x);
      const double M = s.m_row(u, x);
      if (T > 0) {
        r.q_observed[u * m + x] = 1;
        p.q[u * m + x] = M / T;
      }
      if (M > 0) {
        p.theta_defined[u * m + x] = 1;
        for (int x2 = 0; x2 < m; ++x2)
          if (x2 != x) p.theta[(u * m + x) * m + x2] = s.m(u, x, x2) / M;
      }
    }
  }
  r.cim = params_to_cim(p);
  return r;
}

PosteriorParams posterior_params(const SuffStats& s, const Hyperparams& hp) {
  if (!(hp.alpha > 0) || !(hp.tau > 0))
    throw std::invalid_argument("hyperparameters must be positive");
  const int m = s.target_card;
  const double alpha_cell =
      hp.alpha_per_family ? hp.alpha / s.configs.count() : hp.alpha;

  PosteriorParams post;
  const int cells = s.configs.count() * m;
  post.gamma_shape.resize(cells);
  post.gamma_rate.resize(cells);
  post.dirichlet.assign(static_cast<std::size_t>(cells) * m, 0.0);
  for (int u = 0; u < s.configs.count(); ++u) {
    for (int x = 0; x < m; ++x) {
      post.gamma_shape[u * m + x] = alpha_cell + s.m_row(u, x);
      post.gamma_rate[u * m + x] = hp.tau + s.t(u, x);
      for (int x2 = 0; x2 < m; ++x2)
        if (x2 != x)
          post.dirichlet[(u * m + x) * m + x2] = alpha_cell / (m - 1) + s.m(u, x, x2);
    }
  }
  return post;
}

}  // namespace ctbn
