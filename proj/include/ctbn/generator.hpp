#ifndef CTBN_GENERATOR_HPP
#define CTBN_GENERATOR_HPP

#include <cstdint>

#include "ctbn/model.hpp"
#include "ctbn/rng.hpp"
#include "ctbn/trajectory.hpp"

namespace ctbn {

struct GenConfig {
  int nodes = 0;
  double density = 0;  // fraction of the n*(n-1) possible arcs
  int cardinality = 2;
  double rate_min = 1.0;
  double rate_max = 10.0;
  int trajectories = 0;
  double mean_duration = 0;
  std::uint64_t seed = 0;
};

/* Number of arcs implied by a density request: round(density * n * (n-1)). */
int arc_count_for(int nodes, double density);

/* Weakly connected digraph with exactly arc_count arcs: a uniform random
 * spanning tree (Pruefer coded) with uniformly random arc orientations,
 * plus extra arcs drawn without replacement from the remaining ordered
 * pairs.  arc_count must lie in [n-1, n*(n-1)]. */
DirectedGraph random_connected_graph(int nodes, int arc_count, Rng& rng);

/* Throws std::invalid_argument naming the n-1 connectivity bound when the
 * requested density is too small, or when it exceeds the complete graph.
 * With clamp_connectivity set, an arc count below n-1 is raised to n-1
 * instead of failing. */
DirectedGraph generate_graph(const GenConfig& config, bool clamp_connectivity = false);

/* Fills in conditional intensities for the given graph: exit rates drawn
 * uniformly from [rate_min, rate_max], jump rows from a flat Dirichlet,
 * uniform initial distribution. */
CtbnModel generate_cims(const DirectedGraph& graph, const GenConfig& config);

CtbnModel generate_model(const GenConfig& config);

/* Competing exponential clocks, all redrawn after every event.  The
 * initial state is drawn from the model's initial distribution.  If an
 * absorbing joint state is reached the trajectory is cut at its last
 * event and flagged. */
Trajectory sample_trajectory(const CtbnModel& model, double duration, std::uint64_t seed);

Dataset sample_dataset(const CtbnModel& model, const GenConfig& config);

}  // namespace ctbn

#endif
