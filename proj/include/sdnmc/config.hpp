#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "sdnmc/packet.hpp"
#include "sdnmc/policy.hpp"
#include "sdnmc/topology.hpp"

namespace sdnmc {

// Task continuation points. A task starts at entry and either runs to
// finished in one macro-step or parks at one of the controller barrier
// waits. The barrier-aware controlHandleMessage is the only multi-segment
// method; everything else finishes in its first segment.
inline constexpr int kContFinished = -1;
inline constexpr int kContEntry = 0;
inline constexpr int kContInstallWait = 1;   // before fencing the next install
inline constexpr int kContReqAwaitFut = 2;   // awaiting one collected future
inline constexpr int kContFinalWait = 3;     // before releasing the packet

enum class Method {
  HostSendIn,
  HostHandlePacket,
  SwitchHandlePacket,
  SwitchSendOut,
  SwitchHandleMessage,
  SwitchFlood,
  ControlHandleMessage,
};

std::string to_string(Method m);

struct SendInLocals {
  Packet p;
};
struct HandlePacketLocals {
  Packet p;
};
struct ShpLocals {
  Packet p;
  PortId port = 0;
};
struct SendOutLocals {
  PacketId pid = 0;
};
struct ShmLocals {
  MatchField match;
  Priority priority = 0;
  Action action;
};
struct FloodLocals {
  PacketId pid = 0;
};
struct ChmLocals {
  SwitchName sid;       // requesting switch
  PortId port = 0;      // ingress port of the missed packet
  PacketId pid = 0;
  PacketHeader header;
  // Filled at entry from the policy, then consumed by the barrier machine.
  std::vector<Directive> directives;
  bool flood = false;
  size_t dir_idx = 0;                  // next directive to install
  std::vector<TaskId> waiting_futs;    // futures collected by the open window
  size_t fut_idx = 0;                  // next future to await
};

using Locals = std::variant<SendInLocals, HandlePacketLocals, ShpLocals,
                            SendOutLocals, ShmLocals, FloodLocals, ChmLocals>;

struct Task {
  TaskId id = 0;
  Method method = Method::HostSendIn;
  Locals locals;
  int cont = kContEntry;

  bool finished() const { return cont == kContFinished; }
};

enum class ViolationKind {
  ForwardingLoop,
  ContradictoryRules,
  UnsafeDelivery,
  InconsistentTables,
};

std::string to_string(ViolationKind k);

struct Violation {
  ViolationKind kind = ViolationKind::ForwardingLoop;
  std::string where;   // actor name
  PacketId pid = -1;   // -1 when not packet-specific
  std::string detail;

  auto operator<=>(const Violation&) const = default;
};

struct HostHeap {
  HostName name;
  SwitchName sw;
  PortId port = 0;
  std::vector<Packet> delivered;  // kept sorted; insertion order is not observable
};

struct SwitchHeap {
  SwitchName name;
  FlowTable table;
  std::map<PacketId, std::pair<Packet, PortId>> buffer;
  std::set<PacketId> seen;          // loop instrumentation
  std::vector<PacketId> dropped;    // kept sorted
};

struct ControllerHeap {
  PolicyState policy;
  std::map<SwitchName, std::vector<TaskId>> barrier_map;
  std::set<SwitchName> barrier_on;
  std::vector<Violation> errors;    // kept sorted; the model-visible error flag
};

using Heap = std::variant<HostHeap, SwitchHeap, ControllerHeap>;

enum class ActorKind { Controller, Switch, Host };

struct Actor {
  ActorId id = 0;
  ActorKind kind = ActorKind::Host;
  Heap heap;
  std::vector<Task> tasks;  // queue order is spawn order; not observable

  const std::string& name() const;
  Task* find_task(TaskId t);
  const Task* find_task(TaskId t) const;
};

// Which runtime properties are monitored. The loop monitor adds the per-switch
// seen set to the model (it changes behavior: a revisited packet is flagged
// and consumed); the others are pure observers.
struct MonitorSet {
  bool loop = false;
  bool contradiction = false;
  bool safety = false;
  bool consistency = false;
};

struct Injection {
  HostName host;
  PacketHeader header;
  int count = 1;
};

// Immutable scenario data shared by every configuration of one exploration.
struct ScenarioContext {
  std::string name;
  Topology topology;
  PolicySpec policy;
  bool barriers = false;
  MonitorSet monitors;
  // Test hook: skip the pre-request barrierWait in the controller, which
  // breaks the mutual exclusion of barrier windows.
  bool barrier_faulty = false;
  std::vector<Injection> injections;

  ActorId controller = 0;
  std::map<std::string, ActorId> actor_of;   // host and switch names
  std::vector<std::string> actor_names;      // by ActorId

  ActorId actor_for(const std::string& name) const;
};

// A complete system configuration. Value semantics: macro_step copies.
struct Config {
  std::shared_ptr<const ScenarioContext> ctx;
  std::vector<Actor> actors;       // indexed by ActorId
  TaskId next_task = 0;
  std::set<TaskId> finished;       // resolved futures

  Actor& actor(ActorId a) { return actors.at(static_cast<size_t>(a)); }
  const Actor& actor(ActorId a) const { return actors.at(static_cast<size_t>(a)); }
};

}  // namespace sdnmc
