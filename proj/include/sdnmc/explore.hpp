#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sdnmc/runtime.hpp"

namespace sdnmc {

enum class ExploreMode { Full, Property };

std::string to_string(ExploreMode m);
ExploreMode mode_from_string(const std::string& s);

struct ExplorationOptions {
  ExploreMode mode = ExploreMode::Full;
  IndependenceLevel independence = IndependenceLevel::Actor;
  // Interleavings longer than this many macro-steps are cut and flagged.
  int max_depth = 100000;
  // Safety valve for exhaustive enumeration.
  long node_limit = 5'000'000;
  // Cross-check every independent co-enabled pair against the commutation
  // witness (both orders reach the same fingerprint).
  bool debug_commutation = false;
  int commutation_pairs_per_node = 16;
  int parallel = 1;
  // How many distinct final states keep a rendered summary.
  size_t max_final_summaries = 256;
  // Called for every complete (non-deadlocked) leaf configuration. Not
  // invoked from parallel explorations.
  std::function<void(const Config&)> on_complete_leaf;
};

struct ExecutionRecord {
  std::vector<Move> trace;
  std::vector<Violation> violations;
  std::string final_key;
};

struct FinalStateInfo {
  uint64_t fingerprint = 0;
  long count = 0;  // executions reaching this final state
  bool deadlock = false;
  std::vector<std::string> summary;
};

struct ExplorationResult {
  long executions = 0;
  long states = 0;  // search-tree nodes, root included
  long deadlocks = 0;
  long depth_exhausted = 0;
  bool truncated = false;      // node limit hit
  bool stopped_early = false;  // property mode found a violation
  long violating_executions = 0;
  std::map<ViolationKind, long> executions_with;  // per violation kind
  std::set<std::string> final_keys;               // canonical final states
  std::map<std::string, FinalStateInfo> final_info;
  std::optional<ExecutionRecord> first_violation;
  long barrier_windows = 0;
  long barrier_problems = 0;
  std::vector<std::string> barrier_problem_samples;
  long commutation_checks = 0;
  long commutation_failures = 0;
  std::vector<std::string> commutation_failure_samples;
  double elapsed_ms = 0.0;

  long distinct_finals() const { return static_cast<long>(final_keys.size()); }
};

// Stateless search with partial-order reduction: explores one interleaving
// per dependence-equivalence class (persistent/backtrack sets with sleep
// sets over macro-steps).
ExplorationResult explore(const Config& initial, const ExplorationOptions& opts);

// Exhaustive interleaving enumeration, same counters; the reduction baseline.
ExplorationResult enumerate_all(const Config& initial,
                                const ExplorationOptions& opts);

// Re-executes a recorded schedule; throws if any move is not enabled.
Config replay(const Config& initial, const std::vector<Move>& trace);

}  // namespace sdnmc
