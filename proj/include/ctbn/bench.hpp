#ifndef CTBN_BENCH_HPP
#define CTBN_BENCH_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace ctbn {

/* Full factorial grid: nodes x densities x cardinalities x trajectory
 * counts, replicated.  Replicate seeds are derived from the master seed
 * and the cell index, so any sub-grid reproduces the same data. */
struct ExperimentPlan {
  std::vector<int> nodes;
  std::vector<double> densities;
  std::vector<int> cardinalities;
  std::vector<int> trajectory_counts;
  int replicates = 1;
  std::vector<std::string> algorithms;  // ctss, ctss-hc, ctpc-chi2, ctpc-ks
  double duration = 100.0;
  double rate_min = 1.0;
  double rate_max = 10.0;
  std::uint64_t master_seed = 0;
  bool clamp_connectivity = false;
  int max_parents = 4;
  double significance_q = 0.1;
  double significance_theta = 0.1;
  std::optional<int> max_sepset{};
};

ExperimentPlan plan_from_json(const nlohmann::json& j);

struct BenchOutcome {
  int rows_written = 0;
  int rows_skipped = 0;   // already present in the results file
  int cells_failed = 0;   // generation failures, logged and left incomplete
};

/* Appends one row per (cell, replicate, algorithm) to results.csv in
 * out_dir, skipping rows that are already there, then recomputes
 * summary.csv from the full results file.  Learning runs inside a
 * replicate may use `jobs` threads; rows are appended by this thread
 * only.  Rerunning with the same plan and seed reproduces the files
 * byte for byte apart from the wall_seconds column. */
BenchOutcome run_benchmark(const ExperimentPlan& plan, const std::filesystem::path& out_dir,
                           int jobs, std::ostream* progress = nullptr);

extern const char* const kResultsHeader;

}  // namespace ctbn

#endif
