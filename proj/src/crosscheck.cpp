#include "sdnmc/crosscheck.hpp"

#include <chrono>
#include <stdexcept>

#include "sdnmc/build.hpp"

namespace sdnmc {

CrosscheckResult crosscheck(const Scenario& s, int max_depth_override) {
  if (s.barriers)
    throw std::runtime_error(
        "crosscheck requires a barrier-free controller; disable barriers");
  if (s.policy.family == PolicyFamily::Le)
    throw std::runtime_error(
        "crosscheck does not support the learning switch family: flood "
        "requests fall outside the reference semantics");

  auto start = std::chrono::steady_clock::now();
  CrosscheckResult out;

  // Both sides run monitor-free: monitors only consume packets on the actor
  // side and would skew the comparison.
  auto ctx = make_context(s.name, s.topology, s.policy, false, MonitorSet{},
                          s.injections);
  int bound = max_depth_override > 0 ? max_depth_override
                                     : default_oracle_bound(*ctx);

  ExplorationOptions opts;
  opts.mode = ExploreMode::Full;
  opts.independence = IndependenceLevel::Entry;
  opts.max_depth = bound;
  opts.on_complete_leaf = [&out](const Config& cfg) {
    out.actor_finals.insert(config_equiv_key(cfg));
  };
  Config initial = build_initial_config(ctx);
  ExplorationResult actor = explore(initial, opts);
  out.actor_executions = actor.executions;
  out.actor_depth_exhausted = actor.depth_exhausted;
  out.truncated = actor.truncated;
  if (actor.deadlocks > 0)
    throw std::runtime_error("crosscheck hit a deadlocked actor execution");

  OracleState init = build_oracle_initial(ctx);
  OracleEnumOptions ref_opts;
  ref_opts.max_steps = bound;
  OracleEnumResult ref = oracle_enumerate(init, ref_opts);
  out.reference_finals = ref.final_keys;
  out.reference_bound_exhausted = ref.bound_exhausted;
  out.reference_stuck = ref.stuck;
  out.reference_visited = ref.visited;
  out.truncated = out.truncated || ref.truncated;

  out.match = out.actor_finals == out.reference_finals;
  auto end = std::chrono::steady_clock::now();
  out.elapsed_ms =
      std::chrono::duration<double, std::milli>(end - start).count();
  return out;
}

}  // namespace sdnmc
