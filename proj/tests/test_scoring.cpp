#include <doctest.h>

#include <cmath>
#include <limits>

#include "ctbn/scoring.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace ctbn;

namespace {

/* One binary variable, no conditioning; only the state-0 cell carries
 * data, and with tau acting as the only scale the empty cell contributes
 * exactly zero to the rate marginal. */
SuffStats one_cell(double T, double M) {
  SuffStats s = make_suffstats_shape({{"X", 2}}, 0, {});
  s.t(0, 0) = T;
  s.m(0, 0, 1) = M;
  return s;
}

}  // namespace

TEST_CASE("rate marginal on a single cell has the expected closed form") {
  Hyperparams hp;  // alpha = 1, tau = 1
  const SuffStats s = one_cell(3.0, 2.0);
  const double got = log_ml_q(s, hp);
  CHECK(got == doctest::Approx(std::log(6.0 / 256.0)).epsilon(1e-12));
  CHECK(got == doctest::Approx(oracles::log_ml_q_cell(1.0, 1.0, 2.0, 3.0)).epsilon(1e-9));
}

TEST_CASE("rate marginal agrees with quadrature across hyperparameters") {
  const double cases[][4] = {
      // alpha, tau, M, T
      {1.0, 1.0, 0.0, 5.0},  {0.5, 2.0, 3.0, 1.5},  {2.0, 0.25, 7.0, 12.0},
      {1.0, 4.0, 1.0, 0.01}, {3.5, 1.0, 20.0, 8.0},
  };
  for (const auto& c : cases) {
    Hyperparams hp;
    hp.alpha = c[0];
    hp.tau = c[1];
    SuffStats s = one_cell(c[3], c[2]);
    /* the empty state-1 cell contributes (a+1)(ln tau - ln tau) = 0 */
    const double got = log_ml_q(s, hp);
    const double want = oracles::log_ml_q_cell(c[0], c[1], c[2], c[3]);
    CHECK(got == doctest::Approx(want).epsilon(1e-8));
  }
}

TEST_CASE("a censored-only cell still pays for its dwell time") {
  Hyperparams hp;
  const SuffStats s = one_cell(5.0, 0.0);
  CHECK(log_ml_q(s, hp) == doctest::Approx(-2.0 * std::log(6.0)).epsilon(1e-12));
}

TEST_CASE("jump marginal vanishes identically for binary targets") {
  Hyperparams hp;
  hp.alpha = 2.5;
  const CtbnModel model = fixtures::chain2();
  const Dataset ds = fixtures::sample(model, 5, 10.0, 41);
  CHECK(log_ml_theta(compute_suffstats(ds, 1, {0}), hp) == 0.0);
  CHECK(log_ml_theta(compute_suffstats(ds, 0, {}), hp) == 0.0);
  CHECK(log_ml_theta(one_cell(3.0, 2.0), hp) == 0.0);
}

TEST_CASE("ternary jump marginal matches the Beta integral") {
  SuffStats s = make_suffstats_shape({{"X", 3}}, 0, {});
  s.t(0, 0) = 1.0;
  s.m(0, 0, 1) = 4.0;
  s.m(0, 0, 2) = 2.0;
  for (double alpha : {1.0, 0.5, 3.0}) {
    Hyperparams hp;
    hp.alpha = alpha;
    const double got = log_ml_theta(s, hp);
    const double want =
        oracles::log_ml_theta_row_beta(alpha / 2.0, alpha / 2.0, 4.0, 2.0);
    CHECK(got == doctest::Approx(want).epsilon(1e-8));
  }
}

TEST_CASE("four-state jump marginal matches a Monte Carlo estimate") {
  SuffStats s = make_suffstats_shape({{"X", 4}}, 0, {});
  s.t(0, 0) = 1.0;
  s.m(0, 0, 1) = 2.0;
  s.m(0, 0, 2) = 1.0;
  s.m(0, 0, 3) = 3.0;
  Hyperparams hp;
  const double got = log_ml_theta(s, hp);
  const double want = oracles::log_ml_theta_row_mc({1.0 / 3, 1.0 / 3, 1.0 / 3},
                                                   {2.0, 1.0, 3.0}, 1000000, 99);
  CHECK(got == doctest::Approx(want).epsilon(0.02));
}

TEST_CASE("splitting alpha across configurations matches the rescaled prior") {
  const CtbnModel model = fixtures::cycle3();
  const Dataset ds = fixtures::sample(model, 4, 12.0, 7);
  const SuffStats s = compute_suffstats(ds, 0, {1, 2});

  Hyperparams per_family;
  per_family.alpha = 2.0;
  per_family.alpha_per_family = true;
  Hyperparams flat;
  flat.alpha = 0.5;  // 2 / 4 configurations
  CHECK(log_ml_q(s, per_family) == doctest::Approx(log_ml_q(s, flat)).epsilon(1e-13));
  CHECK(log_ml_theta(s, per_family) ==
        doctest::Approx(log_ml_theta(s, flat)).epsilon(1e-13));
}

TEST_CASE("invalid hyperparameters are rejected") {
  const SuffStats s = one_cell(1.0, 1.0);
  Hyperparams hp;
  hp.alpha = 0;
  CHECK_THROWS_AS(log_ml_q(s, hp), std::invalid_argument);
  hp.alpha = 1;
  hp.tau = -2;
  CHECK_THROWS_AS(log_ml_theta(s, hp), std::invalid_argument);
}

TEST_CASE("node score composes marginals and the parent penalty") {
  const CtbnModel model = fixtures::chain2();
  const Dataset ds = fixtures::sample(model, 5, 10.0, 23);
  Hyperparams hp;
  const NodeScore score = node_score(ds, 1, {0}, hp, 0.7);
  CHECK(score.node == 1);
  CHECK(score.parents == std::vector<int>{0});
  CHECK(score.log_prior == doctest::Approx(-0.7));
  CHECK(score.total ==
        doctest::Approx(score.log_ml_q + score.log_ml_theta - 0.7).epsilon(1e-13));

  const NodeScore direct = node_score_from_stats(compute_suffstats(ds, 1, {0}), hp, 0.7);
  CHECK(score.total == direct.total);

  const NodeScore free = node_score(ds, 1, {0}, hp, 0.0);
  CHECK(free.log_prior == 0.0);
  CHECK(free.total == doctest::Approx(score.total + 0.7).epsilon(1e-13));
}

TEST_CASE("trajectory log density matches its sufficient statistics form") {
  const CtbnModel model = fixtures::cycle3();
  const Dataset ds = fixtures::sample(model, 6, 10.0, 67);

  double want = 0;
  for (int node = 0; node < model.node_count(); ++node) {
    const SuffStats s = compute_suffstats(ds, node, model.graph.parents_of(node));
    const Cim& cim = model.cims[node];
    for (int u = 0; u < s.configs.count(); ++u) {
      for (int x = 0; x < s.target_card; ++x) {
        want -= cim.matrices[u].exit_rate(x) * s.t(u, x);
        for (int x2 = 0; x2 < s.target_card; ++x2)
          if (x2 != x && s.m(u, x, x2) > 0)
            want += s.m(u, x, x2) * std::log(cim.matrices[u](x, x2));
      }
    }
  }
  CHECK(log_likelihood(model, ds) == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("an observed transition with zero intensity sinks the density") {
  CtbnModel model = fixtures::indep2();
  model.cims[1].matrices[0] = ctbn::IntensityMatrix(2);  // X1 frozen everywhere

  Dataset ds;
  ds.variables = model.variables;
  Trajectory tr;
  tr.initial = {0, 0};
  tr.duration = 2.0;
  tr.events = {{1.0, 1, 1}};
  ds.trajectories.push_back(tr);

  CHECK(log_likelihood(model, ds) == -std::numeric_limits<double>::infinity());

  ds.trajectories[0].events[0].var = 0;  // X0 still moves freely
  CHECK(std::isfinite(log_likelihood(model, ds)));
}

TEST_CASE("plugging the fitted intensities back in reproduces the fitted density") {
  const CtbnModel truth = fixtures::cycle3();
  const Dataset ds = fixtures::sample(truth, 8, 10.0, 5);

  std::vector<DirectedGraph> graphs;
  graphs.push_back(truth.graph);
  graphs.emplace_back(3);  // empty
  DirectedGraph two_parents(3);
  two_parents.add_arc(0, 1);
  two_parents.add_arc(2, 1);
  graphs.push_back(two_parents);

  for (const DirectedGraph& g : graphs) {
    CtbnModel fitted;
    fitted.variables = truth.variables;
    fitted.graph = g;
    for (int node = 0; node < g.node_count(); ++node)
      fitted.cims.push_back(mle_cim(compute_suffstats(ds, node, g.parents_of(node))).cim);
    fixtures::uniform_initial(fitted);
    CHECK(mle_log_likelihood(g, ds) ==
          doctest::Approx(log_likelihood(fitted, ds)).epsilon(1e-10));
  }
}

TEST_CASE("parameter counts scale with parent configurations") {
  const std::vector<VariableSpec> binary3 = {{"X0", 2}, {"X1", 2}, {"X2", 2}};
  CHECK(param_count(fixtures::chain2().graph, fixtures::chain2().variables) == 6);
  CHECK(param_count(fixtures::cycle3().graph, binary3) == 12);
  CHECK(param_count(DirectedGraph(3), binary3) == 6);

  const std::vector<VariableSpec> ternary2 = {{"A", 3}, {"B", 3}};
  DirectedGraph g(2);
  g.add_arc(0, 1);
  CHECK(param_count(g, ternary2) == 6 + 3 * 6);
}

TEST_CASE("information criterion matches a hand computation") {
  Dataset ds;
  ds.variables = {{"X", 2}, {"Y", 2}};
  Trajectory tr;
  tr.initial = {0, 0};
  tr.duration = 5.0;
  tr.events = {{1.0, 1, 1}, {2.0, 0, 1}, {3.5, 1, 0}};
  ds.trajectories.push_back(tr);

  const double ll = (std::log(0.5) - 1.0) + 2.0 * (std::log(0.4) - 1.0);
  const double want = ll - 0.5 * 4.0 * std::log(3.0);
  CHECK(model_bic(DirectedGraph(2), ds) == doctest::Approx(want).epsilon(1e-12));

  Dataset still;
  still.variables = ds.variables;
  Trajectory quiet;
  quiet.initial = {0, 0};
  quiet.duration = 1.0;
  still.trajectories.push_back(quiet);
  CHECK_THROWS_AS(model_bic(DirectedGraph(2), still), std::invalid_argument);
}
