#include "ctbn/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ctbn/ctpc.hpp"
#include "ctbn/ctss.hpp"
#include "ctbn/eval.hpp"
#include "ctbn/generator.hpp"

namespace ctbn {

const char* const kResultsHeader =
    "n,density,cardinality,h,replicate,algorithm,tp,fp,fn,precision,recall,f1,bic,"
    "wall_seconds";

namespace {

using nlohmann::json;

const std::set<std::string> kKnownAlgorithms = {"ctss", "ctss-hc", "ctpc-chi2", "ctpc-ks"};

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

struct CellSpec {
  int n = 0;
  double density = 0;
  int cardinality = 0;
  int h = 0;
  int index = 0;  // position in the enumeration of the full grid
};

std::string row_key(const std::string& n, const std::string& density, const std::string& card,
                    const std::string& h, const std::string& rep, const std::string& alg) {
  return n + "," + density + "," + card + "," + h + "," + rep + "," + alg;
}

std::string cell_key(const CellSpec& cell, int rep, const std::string& alg) {
  return row_key(std::to_string(cell.n), fmt("%g", cell.density),
                 std::to_string(cell.cardinality), std::to_string(cell.h),
                 std::to_string(rep), alg);
}

DirectedGraph run_algorithm(const Dataset& ds, const std::string& alg,
                            const ExperimentPlan& plan, int jobs) {
  if (alg == "ctss" || alg == "ctss-hc") {
    CtssConfig config;
    config.max_parents = plan.max_parents;
    config.mode = alg == "ctss" ? SearchMode::exhaustive : SearchMode::hill_climb;
    return learn_structure_ctss(ds, config, jobs).graph;
  }
  CtpcConfig config;
  config.significance_q = plan.significance_q;
  config.significance_theta = plan.significance_theta;
  config.theta_test = alg == "ctpc-ks" ? ThetaTestKind::ks : ThetaTestKind::chi2;
  config.max_sepset = plan.max_sepset;
  return learn_structure_ctpc(ds, config, jobs).graph;
}

/* Existing rows are keyed on the first six columns.  A final line without
 * a newline (interrupted run) is dropped from the file before appending. */
std::set<std::string> load_done_keys(const std::filesystem::path& results) {
  std::set<std::string> done;
  std::ifstream in(results);
  if (!in) return done;
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  in.close();

  const bool truncated = !content.empty() && content.back() != '\n';
  std::vector<std::string> lines;
  std::string cur;
  for (char c : content) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (truncated) {
    std::ofstream out(results, std::ios::trunc);
    for (const auto& l : lines) out << l << '\n';
  }

  if (lines.empty()) return done;
  if (lines.front() != kResultsHeader)
    throw std::invalid_argument(results.string() + ": unexpected results header");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_csv(lines[i]);
    if (fields.size() != 14)
      throw std::invalid_argument(results.string() + ": malformed row " + std::to_string(i + 1));
    done.insert(row_key(fields[0], fields[1], fields[2], fields[3], fields[4], fields[5]));
  }
  return done;
}

struct ParsedRow {
  int n, cardinality, h, replicate;
  double density;
  std::string algorithm;
  double precision, recall, f1, bic, wall;
};

std::vector<ParsedRow> load_rows(const std::filesystem::path& results) {
  std::vector<ParsedRow> rows;
  std::ifstream in(results);
  if (!in) return rows;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 14) continue;
    ParsedRow r;
    r.n = std::stoi(f[0]);
    r.density = std::stod(f[1]);
    r.cardinality = std::stoi(f[2]);
    r.h = std::stoi(f[3]);
    r.replicate = std::stoi(f[4]);
    r.algorithm = f[5];
    r.precision = std::stod(f[9]);
    r.recall = std::stod(f[10]);
    r.f1 = std::stod(f[11]);
    r.bic = std::stod(f[12]);
    r.wall = std::stod(f[13]);
    rows.push_back(std::move(r));
  }
  return rows;
}

struct Accum {
  std::vector<double> v;
  void add(double x) { v.push_back(x); }
  double mean() const {
    double s = 0;
    for (double x : v) s += x;
    return v.empty() ? 0 : s / static_cast<double>(v.size());
  }
  double sd() const {
    if (v.size() < 2) return 0;
    const double m = mean();
    double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
  }
};

void write_summary(const std::filesystem::path& results, const std::filesystem::path& summary) {
  const auto rows = load_rows(results);

  using GroupKey = std::tuple<int, double, int, int, std::string>;
  std::map<GroupKey, std::vector<const ParsedRow*>> groups;
  std::map<std::tuple<int, double, int, int, int>, double> ctss_bic;  // by cell + replicate
  for (const auto& r : rows) {
    groups[{r.n, r.density, r.cardinality, r.h, r.algorithm}].push_back(&r);
    if (r.algorithm == "ctss")
      ctss_bic[{r.n, r.density, r.cardinality, r.h, r.replicate}] = r.bic;
  }

  std::ofstream out(summary, std::ios::trunc);
  out << "n,density,cardinality,h,algorithm,replicates_done,f1_mean,f1_sd,"
         "precision_mean,precision_sd,recall_mean,recall_sd,bic_mean,bic_sd,"
         "delta_bic_pct_mean,delta_bic_pct_sd,wall_mean\n";
  for (const auto& [key, members] : groups) {
    const auto& [n, density, card, h, alg] = key;
    Accum f1, prec, rec, bic, wall, delta;
    for (const ParsedRow* r : members) {
      f1.add(r->f1);
      prec.add(r->precision);
      rec.add(r->recall);
      bic.add(r->bic);
      wall.add(r->wall);
      if (alg != "ctss") {
        auto it = ctss_bic.find({n, density, card, h, r->replicate});
        if (it != ctss_bic.end() && it->second != 0)
          delta.add((it->second - r->bic) / it->second * 100.0);
      }
    }
    out << n << ',' << fmt("%g", density) << ',' << card << ',' << h << ',' << alg << ','
        << members.size() << ',' << fmt("%.6f", f1.mean()) << ',' << fmt("%.6f", f1.sd())
        << ',' << fmt("%.6f", prec.mean()) << ',' << fmt("%.6f", prec.sd()) << ','
        << fmt("%.6f", rec.mean()) << ',' << fmt("%.6f", rec.sd()) << ','
        << fmt("%.6f", bic.mean()) << ',' << fmt("%.6f", bic.sd()) << ',';
    if (delta.v.empty())
      out << ",";
    else
      out << fmt("%.6f", delta.mean()) << ',' << fmt("%.6f", delta.sd());
    out << ',' << fmt("%.4f", wall.mean()) << '\n';
  }
}

}  // namespace

ExperimentPlan plan_from_json(const json& j) {
  ExperimentPlan plan;
  try {
    plan.nodes = j.at("nodes").get<std::vector<int>>();
    plan.densities = j.at("densities").get<std::vector<double>>();
    plan.cardinalities = j.at("cardinalities").get<std::vector<int>>();
    plan.trajectory_counts = j.at("trajectory_counts").get<std::vector<int>>();
    plan.replicates = j.at("replicates").get<int>();
    plan.algorithms = j.at("algorithms").get<std::vector<std::string>>();
    plan.duration = j.at("duration").get<double>();
    plan.master_seed = j.at("master_seed").get<std::uint64_t>();
    plan.clamp_connectivity = j.value("clamp_connectivity", false);
    plan.max_parents = j.value("max_parents", 4);
    plan.significance_q = j.value("significance_q", 0.1);
    plan.significance_theta = j.value("significance_theta", 0.1);
    if (j.contains("rate_range")) {
      plan.rate_min = j.at("rate_range").at(0).get<double>();
      plan.rate_max = j.at("rate_range").at(1).get<double>();
    }
    if (j.contains("max_sepset") && !j.at("max_sepset").is_null())
      plan.max_sepset = j.at("max_sepset").get<int>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed experiment plan: ") + e.what());
  }

  if (plan.nodes.empty() || plan.densities.empty() || plan.cardinalities.empty() ||
      plan.trajectory_counts.empty() || plan.algorithms.empty())
    throw std::invalid_argument("experiment plan has an empty factor");
  if (plan.replicates < 1) throw std::invalid_argument("replicates must be at least 1");
  if (!(plan.duration > 0)) throw std::invalid_argument("duration must be positive");
  for (const auto& alg : plan.algorithms)
    if (!kKnownAlgorithms.count(alg))
      throw std::invalid_argument("unknown algorithm: " + alg);
  return plan;
}

BenchOutcome run_benchmark(const ExperimentPlan& plan, const std::filesystem::path& out_dir,
                           int jobs, std::ostream* progress) {
  std::filesystem::create_directories(out_dir);
  const auto results_path = out_dir / "results.csv";
  const auto summary_path = out_dir / "summary.csv";
  const auto failures_path = out_dir / "failures.log";

  std::set<std::string> done = load_done_keys(results_path);
  const bool fresh = !std::filesystem::exists(results_path) ||
                     std::filesystem::file_size(results_path) == 0;

  std::ofstream results(results_path, std::ios::app);
  if (!results) throw std::runtime_error("cannot write " + results_path.string());
  if (fresh) results << kResultsHeader << '\n' << std::flush;

  BenchOutcome outcome;

  std::vector<CellSpec> cells;
  int index = 0;
  for (int n : plan.nodes)
    for (double density : plan.densities)
      for (int card : plan.cardinalities)
        for (int h : plan.trajectory_counts)
          cells.push_back({n, density, card, h, index++});

  for (const CellSpec& cell : cells) {
    for (int rep = 0; rep < plan.replicates; ++rep) {
      bool all_done = true;
      for (const auto& alg : plan.algorithms)
        if (!done.count(cell_key(cell, rep, alg))) all_done = false;
      if (all_done) {
        outcome.rows_skipped += static_cast<int>(plan.algorithms.size());
        continue;
      }

      GenConfig gc;
      gc.nodes = cell.n;
      gc.density = cell.density;
      gc.cardinality = cell.cardinality;
      gc.rate_min = plan.rate_min;
      gc.rate_max = plan.rate_max;
      gc.trajectories = cell.h;
      gc.mean_duration = plan.duration;
      gc.seed = derive_seed(plan.master_seed, static_cast<std::uint64_t>(cell.index),
                            static_cast<std::uint64_t>(rep));

      DirectedGraph truth;
      CtbnModel model;
      Dataset ds;
      try {
        truth = generate_graph(gc, plan.clamp_connectivity);
        model = generate_cims(truth, gc);
        ds = sample_dataset(model, gc);
      } catch (const std::invalid_argument& e) {
        ++outcome.cells_failed;
        std::ofstream failures(failures_path, std::ios::app);
        failures << "n=" << cell.n << " density=" << fmt("%g", cell.density)
                 << " cardinality=" << cell.cardinality << " h=" << cell.h << " replicate="
                 << rep << ": " << e.what() << '\n';
        if (progress)
          *progress << "cell n=" << cell.n << " density=" << fmt("%g", cell.density)
                    << " cardinality=" << cell.cardinality << " replicate=" << rep
                    << " failed: " << e.what() << '\n';
        continue;
      }

      for (const auto& alg : plan.algorithms) {
        if (done.count(cell_key(cell, rep, alg))) {
          ++outcome.rows_skipped;
          continue;
        }
        const auto t0 = std::chrono::steady_clock::now();
        const DirectedGraph learned = run_algorithm(ds, alg, plan, jobs);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        const GraphComparison cmp = compare_graphs(learned, truth);
        const double bic = model_bic(learned, ds);

        results << cell.n << ',' << fmt("%g", cell.density) << ',' << cell.cardinality << ','
                << cell.h << ',' << rep << ',' << alg << ',' << cmp.tp << ',' << cmp.fp << ','
                << cmp.fn << ',' << fmt("%.6f", cmp.precision) << ',' << fmt("%.6f", cmp.recall)
                << ',' << fmt("%.6f", cmp.f1) << ',' << fmt("%.6f", bic) << ','
                << fmt("%.4f", wall) << '\n'
                << std::flush;
        ++outcome.rows_written;
        done.insert(cell_key(cell, rep, alg));
        if (progress)
          *progress << "n=" << cell.n << " density=" << fmt("%g", cell.density) << " card="
                    << cell.cardinality << " h=" << cell.h << " rep=" << rep << ' ' << alg
                    << " f1=" << fmt("%.3f", cmp.f1) << " wall=" << fmt("%.2f", wall) << "s\n";
      }
    }
  }

  write_summary(results_path, summary_path);
  return outcome;
}

}  // namespace ctbn
