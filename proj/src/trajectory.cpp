#include "ctbn/trajectory.hpp"

#include <stdexcept>
#include <string>

namespace ctbn {

long long total_transitions(const Dataset& ds) {
  long long n = 0;
  for (const auto& tr : ds.trajectories) n += static_cast<long long>(tr.events.size());
  return n;
}

double total_time(const Dataset& ds) {
  double t = 0;
  for (const auto& tr : ds.trajectories) t += tr.duration;
  return t;
}

void validate_dataset(const Dataset& ds) {
  const int n = ds.node_count();
  for (std::size_t i = 0; i < ds.trajectories.size(); ++i) {
    const Trajectory& tr = ds.trajectories[i];
    const std::string where = "trajectory " + std::to_string(i) + ": ";
    if (static_cast<int>(tr.initial.size()) != n)
      throw std::invalid_argument(where + "initial state has wrong length");
    if (tr.duration < 0) throw std::invalid_argument(where + "negative duration");
    std::vector<int> state = tr.initial;
    for (int k = 0; k < n; ++k)
      if (state[k] < 0 || state[k] >= ds.variables[k].cardinality)
        throw std::invalid_argument(where + "initial state out of range");
    double prev = 0;
    for (const TrajectoryEvent& ev : tr.events) {
      if (ev.var < 0 || ev.var >= n)
        throw std::invalid_argument(where + "event variable out of range");
      if (ev.state < 0 || ev.state >= ds.variables[ev.var].cardinality)
        throw std::invalid_argument(where + "event state out of range");
      if (!(ev.time > prev))
        throw std::invalid_argument(where + "event times must be strictly increasing from zero");
      if (ev.time > tr.duration)
        throw std::invalid_argument(where + "event time beyond the trajectory duration");
      if (ev.state == state[ev.var])
        throw std::invalid_argument(where + "event does not change the variable state");
      state[ev.var] = ev.state;
      prev = ev.time;
    }
  }
}

}  // namespace ctbn
