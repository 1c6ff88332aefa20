#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ctbn/bench.hpp"
#include "ctbn/ctpc.hpp"
#include "ctbn/ctss.hpp"
#include "ctbn/eval.hpp"
#include "ctbn/generator.hpp"
#include "ctbn/io.hpp"
#include "ctbn/scoring.hpp"

namespace {

struct GenerateArgs {
  std::string config, out_model, out_data, out_csv;
};

int cmd_generate(const GenerateArgs& args) {
  const ctbn::GenConfig config = ctbn::gen_config_from_json(ctbn::load_json_file(args.config));
  const ctbn::CtbnModel model = ctbn::generate_model(config);
  const ctbn::Dataset ds = ctbn::sample_dataset(model, config);

  if (!args.out_model.empty()) ctbn::save_json_file(args.out_model, ctbn::model_to_json(model));
  if (!args.out_data.empty()) ctbn::save_json_file(args.out_data, ctbn::dataset_to_json(ds));
  if (!args.out_csv.empty()) {
    std::ofstream csv(args.out_csv);
    if (!csv) throw std::runtime_error("cannot write " + args.out_csv);
    ctbn::write_dataset_csv(ds, csv);
  }

  std::cout << "nodes: " << model.node_count() << "\narcs: " << model.graph.arc_count()
            << "\ntransitions: " << ctbn::total_transitions(ds) << '\n';
  return 0;
}

struct LearnArgs {
  std::string data, algorithm = "ctss", theta_test = "chi2", out;
  std::string scores_path, verdicts_path;
  double alpha_q = 0.1, alpha_theta = 0.1;
  double prior_alpha = 1.0, prior_tau = 1.0;
  int max_parents = 4;
  int max_sepset = -1;
  int jobs = 1;
  std::uint64_t seed = 0;  // accepted for interface symmetry; learning is deterministic
};

int cmd_learn(const LearnArgs& args) {
  const ctbn::Dataset ds = ctbn::dataset_from_json(ctbn::load_json_file(args.data));

  ctbn::DirectedGraph learned;
  const auto t0 = std::chrono::steady_clock::now();
  if (args.algorithm == "ctss" || args.algorithm == "ctss-hc") {
    ctbn::CtssConfig config;
    config.max_parents = args.max_parents;
    config.mode = args.algorithm == "ctss" ? ctbn::SearchMode::exhaustive
                                           : ctbn::SearchMode::hill_climb;
    config.hp.alpha = args.prior_alpha;
    config.hp.tau = args.prior_tau;
    const ctbn::CtssResult result = ctbn::learn_structure_ctss(ds, config, args.jobs);
    learned = result.graph;
    if (!args.scores_path.empty())
      ctbn::save_json_file(args.scores_path, ctbn::scores_to_json(result, ds.variables));
  } else if (args.algorithm == "ctpc") {
    ctbn::CtpcConfig config;
    config.significance_q = args.alpha_q;
    config.significance_theta = args.alpha_theta;
    if (args.theta_test == "chi2")
      config.theta_test = ctbn::ThetaTestKind::chi2;
    else if (args.theta_test == "ks")
      config.theta_test = ctbn::ThetaTestKind::ks;
    else
      throw std::invalid_argument("unknown theta test: " + args.theta_test);
    if (args.max_sepset >= 0) config.max_sepset = args.max_sepset;
    const ctbn::CtpcResult result = ctbn::learn_structure_ctpc(ds, config, args.jobs);
    learned = result.graph;
    if (!args.verdicts_path.empty())
      ctbn::save_json_file(args.verdicts_path, ctbn::verdicts_to_json(result, ds.variables));
  } else {
    throw std::invalid_argument("unknown algorithm: " + args.algorithm);
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  ctbn::save_json_file(args.out, ctbn::graph_to_json(learned, ds.variables));
  std::cout << "algorithm: " << args.algorithm << "\narcs: " << learned.arc_count()
            << "\nseconds: " << wall << '\n';
  return 0;
}

struct EvaluateArgs {
  std::string data, learned, reference, out;
};

int cmd_evaluate(const EvaluateArgs& args) {
  const ctbn::Dataset ds = ctbn::dataset_from_json(ctbn::load_json_file(args.data));
  const ctbn::DirectedGraph learned =
      ctbn::graph_from_json(ctbn::load_json_file(args.learned), ds.variables);
  const ctbn::DirectedGraph reference = ctbn::graph_from_model_or_graph_json(
      ctbn::load_json_file(args.reference), ds.variables);

  const ctbn::GraphComparison cmp = ctbn::compare_graphs(learned, reference);
  const double bic_learned = ctbn::model_bic(learned, ds);
  const double bic_reference = ctbn::model_bic(reference, ds);

  nlohmann::json report{{"tp", cmp.tp},
                        {"fp", cmp.fp},
                        {"fn", cmp.fn},
                        {"precision", cmp.precision},
                        {"recall", cmp.recall},
                        {"f1", cmp.f1},
                        {"bic_learned", bic_learned},
                        {"bic_reference", bic_reference},
                        {"delta_bic_percent",
                         ctbn::delta_bic_percent(bic_reference, bic_learned)}};
  if (!args.out.empty()) ctbn::save_json_file(args.out, report);
  std::cout << report.dump(2) << '\n';
  return 0;
}

struct BenchmarkArgs {
  std::string plan, out_dir;
  int jobs = 1;
  bool quiet = false;
};

int cmd_benchmark(const BenchmarkArgs& args) {
  const ctbn::ExperimentPlan plan = ctbn::plan_from_json(ctbn::load_json_file(args.plan));
  const ctbn::BenchOutcome outcome =
      ctbn::run_benchmark(plan, args.out_dir, args.jobs, args.quiet ? nullptr : &std::cout);
  std::cout << "rows written: " << outcome.rows_written
            << "\nrows skipped: " << outcome.rows_skipped
            << "\ncells failed: " << outcome.cells_failed << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"continuous-time Bayesian network toolkit"};
  app.require_subcommand(1);

  GenerateArgs gen_args;
  auto* gen = app.add_subcommand("generate", "sample a random model and trajectories");
  gen->add_option("--config", gen_args.config, "generator config JSON")->required();
  gen->add_option("--out-model", gen_args.out_model, "write the sampled model here");
  gen->add_option("--out-data", gen_args.out_data, "write the sampled trajectories here");
  gen->add_option("--out-csv", gen_args.out_csv, "also export trajectories as CSV");

  LearnArgs learn_args;
  auto* learn = app.add_subcommand("learn", "learn a structure from trajectories");
  learn->add_option("--data", learn_args.data, "dataset JSON")->required();
  learn->add_option("--algorithm", learn_args.algorithm, "ctss, ctss-hc, or ctpc");
  learn->add_option("--theta-test", learn_args.theta_test, "chi2 or ks (ctpc only)");
  learn->add_option("--alpha-q", learn_args.alpha_q, "significance level for the exit rate test");
  learn->add_option("--alpha-theta", learn_args.alpha_theta,
                    "significance level for the jump row test");
  learn->add_option("--prior-alpha", learn_args.prior_alpha,
                    "pseudo-transition count of the score prior (ctss only)");
  learn->add_option("--prior-tau", learn_args.prior_tau,
                    "pseudo-time of the score prior (ctss only)");
  learn->add_option("--max-parents", learn_args.max_parents, "parent set size cap (ctss only)");
  learn->add_option("--max-sepset", learn_args.max_sepset,
                    "separating set size cap (ctpc only; unbounded when omitted)");
  learn->add_option("--jobs", learn_args.jobs, "worker threads across nodes");
  learn->add_option("--seed", learn_args.seed, "accepted but unused; learning is deterministic");
  learn->add_option("--out", learn_args.out, "write the learned graph here")->required();
  learn->add_option("--scores", learn_args.scores_path, "write per-node score diagnostics here");
  learn->add_option("--verdicts", learn_args.verdicts_path, "write the independence test log here");

  EvaluateArgs eval_args;
  auto* eval = app.add_subcommand("evaluate", "compare a learned graph against a reference");
  eval->add_option("--data", eval_args.data, "dataset JSON")->required();
  eval->add_option("--learned", eval_args.learned, "learned graph JSON")->required();
  eval->add_option("--reference", eval_args.reference, "reference graph or model JSON")->required();
  eval->add_option("--out", eval_args.out, "write the report JSON here");

  BenchmarkArgs bench_args;
  auto* bench = app.add_subcommand("benchmark", "run an experiment plan");
  bench->add_option("--plan", bench_args.plan, "experiment plan JSON")->required();
  bench->add_option("--out-dir", bench_args.out_dir, "directory for results")->required();
  bench->add_option("--jobs", bench_args.jobs, "worker threads across nodes");
  bench->add_flag("--quiet", bench_args.quiet, "suppress per-row progress");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) return cmd_generate(gen_args);
    if (learn->parsed()) return cmd_learn(learn_args);
    if (eval->parsed()) return cmd_evaluate(eval_args);
    if (bench->parsed()) return cmd_benchmark(bench_args);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
