#ifndef CTBN_TRAJECTORY_HPP
#define CTBN_TRAJECTORY_HPP

#include <vector>

#include "ctbn/model.hpp"

namespace ctbn {

struct TrajectoryEvent {
  double time = 0;
  int var = -1;
  int state = -1;  // state the variable jumps to
};

struct Trajectory {
  std::vector<int> initial;
  std::vector<TrajectoryEvent> events;  // strictly increasing times in (0, duration]
  double duration = 0;
  bool ended_early = false;  // absorbing joint state reached before the horizon
};

struct Dataset {
  std::vector<VariableSpec> variables;
  std::vector<Trajectory> trajectories;

  int node_count() const { return static_cast<int>(variables.size()); }
};

long long total_transitions(const Dataset& ds);
double total_time(const Dataset& ds);

/* Structural checks used when loading external data; throws
 * std::invalid_argument on the first problem found. */
void validate_dataset(const Dataset& ds);

}  // namespace ctbn

#endif
