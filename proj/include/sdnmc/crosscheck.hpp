#pragma once

#include <set>
#include <string>

#include "sdnmc/explore.hpp"
#include "sdnmc/oracle.hpp"
#include "sdnmc/scenario.hpp"

namespace sdnmc {

// Compares the final states reachable under the actor encoding with those
// derivable in the reference semantics, both projected through the
// equivalence relation. Branches cut by a bound are flagged on both sides and
// excluded from the comparison; MATCH means the completed final-state sets
// coincide. Scenarios with barriers or flood delivery are rejected.
struct CrosscheckResult {
  bool match = false;
  std::set<std::string> actor_finals;
  std::set<std::string> reference_finals;
  long actor_executions = 0;
  long actor_depth_exhausted = 0;
  long reference_bound_exhausted = 0;
  long reference_stuck = 0;
  long reference_visited = 0;
  bool truncated = false;
  double elapsed_ms = 0.0;
};

CrosscheckResult crosscheck(const Scenario& s, int max_depth_override = 0);

}  // namespace sdnmc
