#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sdnmc/config.hpp"

namespace sdnmc {

// A scheduling choice: run the next macro-step segment of one task.
struct Move {
  ActorId actor = 0;
  TaskId task = 0;

  auto operator<=>(const Move&) const = default;
};

std::string to_string(const Move& m);

enum class IndependenceLevel { Naive, Actor, Entry, Context };

std::string to_string(IndependenceLevel l);
IndependenceLevel independence_from_string(const std::string& s);

// Heap cell (or cell group) touched by a macro-step, for dependence checks.
// Appends to commutative logs (delivered, dropped, errors, spawn queues) are
// not regions: they are kept in canonical order, so they commute bit-wise.
struct Region {
  enum class Area {
    FlowTable,   // whole-table access (coarse)
    FlowKey,     // one (match, priority) entry; reads use any_priority
    Buffer,      // one buffered packet slot
    Seen,        // one packet's seen flag
    PolicyKey,   // one policy-state cell
    BarrierMap,  // one switch's pending-install list
    BarrierOn,   // one switch's active-barrier flag
  };
  static constexpr int kAnyPriority = -1;

  ActorId actor = 0;
  Area area = Area::FlowTable;
  std::string key;
  int prio = kAnyPriority;
  bool write = false;
};

// What one macro-step did; input to the dependence relation, the monitors and
// the trace renderer.
struct StepSummary {
  Move move;
  Method method = Method::HostSendIn;
  int serial = -1;  // assigned by the explorer; same serial = same pre-state
  bool task_finished = false;
  std::vector<Region> regions;
  struct Spawn {
    ActorId actor;
    TaskId task;
    Method method;
  };
  std::vector<Spawn> spawned;
  std::vector<Violation> violations;
  struct BarrierEvent {
    bool activate = false;  // false: complete
    SwitchName sw;
  };
  std::vector<BarrierEvent> barrier_events;
  // Install steps record whether the put changed any lookup result for its
  // match, and with which action; used by context-sensitive independence.
  struct InstallFact {
    MatchField match;
    Priority priority = 0;
    Action action;
    bool lookup_changed = true;
  };
  std::optional<InstallFact> install;
  // The future this task ended parked on, if any. A step that completes that
  // future moves this step's release boundary: the segment would have passed
  // through the await and run further, so the two steps cannot commute.
  // Barrier waits need no such field; every barrier wait records a read of
  // the window state, and only controller steps write it.
  TaskId parked_future = kNoTask;
};

// Await condition of a task, derived from its continuation point.
struct Await {
  enum class Kind { Ready, Future, BarrierFree };
  Kind kind = Kind::Ready;
  TaskId fut = kNoTask;
  SwitchName sw;
};

Await await_of(const Config& cfg, const Actor& a, const Task& t);
bool await_satisfied(const Config& cfg, const Await& w);

// All (actor, task) pairs whose next segment can run, ascending.
std::vector<Move> enabled_moves(const Config& cfg);

bool is_complete(const Config& cfg);

// True when nothing is enabled but unfinished tasks remain.
bool detect_deadlock(const Config& cfg);

// Runs the chosen task serially until it finishes or parks at an unsatisfied
// await. Pure: returns a new configuration, never mutates the input. Throws
// std::logic_error if the move is not enabled.
Config macro_step(const Config& cfg, const Move& m, StepSummary* summary = nullptr);

// Canonical serialization: task and future ids renamed by color refinement,
// flow tables in observational normal form, queues and logs as sorted
// multisets. Two configurations that differ only in id allocation or in
// unobservable ordering serialize identically.
std::string canonical_serialize(const Config& cfg);

uint64_t canonical_fingerprint(const Config& cfg);

uint64_t fnv1a64(const std::string& bytes);

// Dependence of two executed/simulated macro-steps at the given level. Steps
// of different actors are independent unless one of them completes work the
// other ends awaiting (which would move that release boundary); finer levels
// refine within an actor. Context-sensitive facts are only applied when both
// summaries were computed against the same pre-state (equal serials).
bool dependent(const StepSummary& a, const StepSummary& b, IndependenceLevel l);

// Renders a final configuration as stable text lines (one per actor with any
// observable content), for reports and tests.
std::vector<std::string> summarize_final_state(const Config& cfg);

}  // namespace sdnmc
