#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "sdnmc/packet.hpp"
#include "sdnmc/topology.hpp"

namespace sdnmc {

enum class PolicyFamily { Lb, SshBuggy, SshCorrect, Le, Mi, Mib };

std::string to_string(PolicyFamily f);

// Static policy parameters. `barriers` lives in the scenario, not here: every
// family can run with or without the barrier-aware controller.
struct PolicySpec {
  PolicyFamily family = PolicyFamily::Lb;
  std::vector<HostName> replicas;        // Lb: targets for VIP traffic
  PortId trusted_port = 1;               // Mi/Mib: port that confers trust
  std::set<HostName> authenticated;      // Le: hosts allowed to send

  auto operator<=>(const PolicySpec&) const = default;
};

// Mutable policy data carried in the controller heap. Only the fields used by
// the active family are touched.
struct PolicyState {
  // Lb: per-packet round-robin position. The replica picked for a packet's
  // k-th request is replicas[(pid + k) mod n], so repeated requests for one
  // packet rotate through the replicas and concurrent packets do not contend
  // on shared policy data.
  std::map<PacketId, int> lb_attempts;
  // Le: learned attachment points.
  std::map<HostName, std::pair<SwitchName, PortId>> learned;
  // Mi/Mib: hosts that have proven their location.
  std::set<HostName> trusted;

  auto operator<=>(const PolicyState&) const = default;
};

// One flow rule the controller wants installed.
struct Directive {
  SwitchName sw;
  MatchField match;
  Priority priority = 0;
  Action action;

  auto operator<=>(const Directive&) const = default;
};

// Policy-state cell touched while computing directives; used for independence
// analysis of controller tasks.
struct PolicyAccess {
  std::string key;
  bool write = false;

  auto operator<=>(const PolicyAccess&) const = default;
};

struct ApplyResult {
  std::vector<Directive> directives;
  bool flood = false;  // Le: deliver by flooding instead of a sendOut
  std::vector<PolicyAccess> accesses;
};

// The policy function shared by the actor encoding and the reference
// semantics: given a packet-in event (switch sid, ingress port o, packet id,
// header), mutate the policy state and produce the rules to install. The
// directive order is the install order.
ApplyResult apply_policy(const PolicySpec& spec, const Topology& top,
                         PolicyState& state, const SwitchName& sid, PortId o,
                         PacketId pid, const PacketHeader& ph);

}  // namespace sdnmc
