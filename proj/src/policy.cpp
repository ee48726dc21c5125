#include "sdnmc/policy.hpp"

#include <stdexcept>

namespace sdnmc {

std::string to_string(PolicyFamily f) {
  switch (f) {
    case PolicyFamily::Lb: return "LB";
    case PolicyFamily::SshBuggy: return "SSH_BUGGY";
    case PolicyFamily::SshCorrect: return "SSH_CORRECT";
    case PolicyFamily::Le: return "LE";
    case PolicyFamily::Mi: return "MI";
    case PolicyFamily::Mib: return "MIB";
  }
  return "?";
}

namespace {

// Rules along a hop path: forward toward the next hop's ingress port, deliver
// to `dst` at the last hop. One directive per hop, source first.
std::vector<Directive> path_directives(const std::vector<PathHop>& hops,
                                       const PacketHeader& ph,
                                       const HostName& dst) {
  std::vector<Directive> out;
  for (size_t i = 0; i < hops.size(); ++i) {
    Action act = (i + 1 < hops.size())
                     ? Action::to_switch(hops[i + 1].at, hops[i + 1].in_port)
                     : Action::to_host(dst);
    out.push_back({hops[i].at, {ph, hops[i].in_port}, 0, act});
  }
  return out;
}

// Unicast rules from (sid, o) to dst; empty if unreachable.
std::vector<Directive> unicast(const Topology& top, const SwitchName& sid,
                               PortId o, const PacketHeader& ph,
                               const HostName& dst) {
  auto hops = shortest_path(top, sid, o, dst);
  if (!hops) return {};
  return path_directives(*hops, ph, dst);
}

ApplyResult apply_lb(const PolicySpec& spec, const Topology& top,
                     PolicyState& state, const SwitchName& sid, PortId o,
                     PacketId pid, const PacketHeader& ph) {
  ApplyResult res;
  if (!is_vip(ph.dst)) {
    res.directives = unicast(top, sid, o, ph, ph.dst);
    return res;
  }
  res.accesses.push_back({"lb:" + std::to_string(pid), true});
  if (spec.replicas.empty()) return res;
  int attempt = state.lb_attempts[pid]++;
  const HostName& replica =
      spec.replicas[(static_cast<size_t>(pid) + attempt) % spec.replicas.size()];
  res.directives = unicast(top, sid, o, ph, replica);
  return res;
}

ApplyResult apply_ssh(bool buggy, const Topology& top, const SwitchName& sid,
                      PortId o, const PacketHeader& ph) {
  ApplyResult res;
  if (is_vip(ph.dst)) return res;
  res.directives = unicast(top, sid, o, ph, ph.dst);
  if (ph.kind == PacketKind::Ssh && !res.directives.empty()) {
    // Block SSH at the requesting switch. The buggy variant installs the drop
    // at the same priority as the forwarding rule it just emitted, so the two
    // rules contradict and the winner depends on install order; the correct
    // variant outranks the forwarding rule.
    Priority p = buggy ? 0 : 1;
    res.directives.push_back({sid, {ph, o}, p, Action::drop()});
  }
  return res;
}

ApplyResult apply_le(const PolicySpec& spec, const Topology& top,
                     PolicyState& state, const SwitchName& sid, PortId o,
                     const PacketHeader& ph) {
  ApplyResult res;
  if (spec.authenticated.count(ph.src) == 0) return res;
  res.accesses.push_back({"learn:" + ph.src, true});
  res.accesses.push_back({"learn:" + ph.dst, false});
  state.learned[ph.src] = {sid, o};
  auto it = state.learned.find(ph.dst);
  if (it == state.learned.end()) {
    res.flood = true;
    return res;
  }
  res.directives = unicast(top, sid, o, ph, ph.dst);
  if (res.directives.empty()) res.flood = true;
  return res;
}

ApplyResult apply_mi(bool buggy, const PolicySpec& spec, const Topology& top,
                     PolicyState& state, const SwitchName& sid, PortId o,
                     const PacketHeader& ph) {
  ApplyResult res;
  res.accesses.push_back({"trust", true});
  if (o == spec.trusted_port) state.trusted.insert(ph.src);
  bool allowed = state.trusted.count(ph.src) != 0;
  // The buggy variant skips the trust check for packets entering on port 2.
  if (buggy && o == 2) allowed = true;
  if (!allowed || is_vip(ph.dst)) return res;
  res.directives = unicast(top, sid, o, ph, ph.dst);
  if (!res.directives.empty() &&
      top.host_attachment(ph.dst).second == spec.trusted_port)
    state.trusted.insert(ph.dst);
  return res;
}

}  // namespace

ApplyResult apply_policy(const PolicySpec& spec, const Topology& top,
                         PolicyState& state, const SwitchName& sid, PortId o,
                         PacketId pid, const PacketHeader& ph) {
  switch (spec.family) {
    case PolicyFamily::Lb:
      return apply_lb(spec, top, state, sid, o, pid, ph);
    case PolicyFamily::SshBuggy:
      return apply_ssh(true, top, sid, o, ph);
    case PolicyFamily::SshCorrect:
      return apply_ssh(false, top, sid, o, ph);
    case PolicyFamily::Le:
      return apply_le(spec, top, state, sid, o, ph);
    case PolicyFamily::Mi:
      return apply_mi(false, spec, top, state, sid, o, ph);
    case PolicyFamily::Mib:
      return apply_mi(true, spec, top, state, sid, o, ph);
  }
  throw std::logic_error("unknown policy family");
}

}  // namespace sdnmc
