#pragma once

#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sdnmc/config.hpp"

namespace sdnmc {

// Direct implementation of the network's small-step semantics, independent of
// the actor runtime: components hold input channels (multisets of pending
// items) and non-deterministic rule applications consume them. Used to
// cross-validate the actor encoding's reachable final states.

struct PktInItem {
  SwitchName sid;
  PortId port = 0;
  PacketId pid = 0;
  PacketHeader header;

  auto operator<=>(const PktInItem&) const = default;
};

struct OracleHost {
  SwitchName sw;
  PortId port = 0;
  std::vector<Packet> fresh;    // packets not yet sent into the network
  std::vector<Packet> deliver;  // packets on the wire toward this host
};

struct OracleSwitch {
  FlowTable table;
  std::vector<std::pair<Packet, PortId>> buffer;
  std::vector<std::pair<Packet, PortId>> arrivals;  // packets entering a port
  std::vector<FlowEntry> mods;                      // pending rule installs
  std::vector<PacketHeader> pktouts;                // pending packet releases
};

struct OracleState {
  std::shared_ptr<const ScenarioContext> ctx;
  std::vector<std::pair<HostName, OracleHost>> hosts;      // sorted by name
  std::vector<std::pair<SwitchName, OracleSwitch>> switches;  // sorted by name
  PolicyState policy;
  std::vector<PktInItem> pktins;

  OracleHost& host(const HostName& h);
  OracleSwitch& sw(const SwitchName& s);
};

OracleState build_oracle_initial(std::shared_ptr<const ScenarioContext> ctx);

// All states reachable in one rule application, labeled with the rule name.
std::vector<std::pair<std::string, OracleState>> successors(const OracleState& st);

// True when every channel is empty: the derivation is complete.
bool oracle_complete(const OracleState& st);

std::string oracle_canonical(const OracleState& st);

struct OracleEnumOptions {
  int max_steps = 0;       // 0: derive from scenario size
  long node_limit = 2'000'000;
};

struct OracleEnumResult {
  std::set<std::string> final_keys;  // equivalence-projected final states
  long visited = 0;
  long bound_exhausted = 0;  // derivations cut by the step bound
  long stuck = 0;            // no rule applies but channels are not empty
  bool truncated = false;
};

OracleEnumResult oracle_enumerate(const OracleState& initial,
                                  const OracleEnumOptions& opts);

// Projection of a state onto the content compared by the equivalence
// relation: pending work, flow tables, buffers and policy state. The actor
// and reference sides project onto the same format.
std::string oracle_equiv_key(const OracleState& st);
std::string config_equiv_key(const Config& cfg);

bool equivalent(const OracleState& st, const Config& cfg);

// Step bound heuristic used when OracleEnumOptions.max_steps is 0.
int default_oracle_bound(const ScenarioContext& ctx);

}  // namespace sdnmc
