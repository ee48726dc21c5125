#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sdnmc/ids.hpp"

namespace sdnmc {

// Bidirectional network topology: switch-host attachments and switch-switch
// links, each link pinned to a port at every switch endpoint. Port numbers
// must be unique per switch across both link kinds.
class Topology {
 public:
  struct ShLink {
    SwitchName sw;
    HostName host;
    PortId port = 0;  // port at sw
  };
  struct SsLink {
    SwitchName a;
    PortId port_a = 0;  // port at a
    SwitchName b;
    PortId port_b = 0;  // port at b
  };

  // What sits behind one port of a switch.
  struct Peer {
    bool is_host = false;
    std::string name;      // host or switch name
    PortId far_port = 0;   // ingress port at the peer switch (unused for hosts)
  };

  void add_sh_link(const ShLink& l) { sh_links_.push_back(l); }
  void add_ss_link(const SsLink& l) { ss_links_.push_back(l); }

  // Validates port uniqueness and naming discipline; throws std::runtime_error
  // on violation and freezes the derived maps.
  void finalize();

  const std::vector<ShLink>& sh_links() const { return sh_links_; }
  const std::vector<SsLink>& ss_links() const { return ss_links_; }

  std::vector<SwitchName> switches() const;  // sorted
  std::vector<HostName> hosts() const;       // sorted

  bool has_switch(const SwitchName& s) const { return ports_.count(s) != 0; }
  bool has_host(const HostName& h) const { return attachment_.count(h) != 0; }

  // Attachment point of a host: (switch, port at that switch).
  std::pair<SwitchName, PortId> host_attachment(const HostName& h) const;

  // Port map of a switch, sorted by port.
  const std::map<PortId, Peer>& ports(const SwitchName& s) const;

  // Neighbor switches (names), sorted, deduplicated.
  std::vector<SwitchName> neighbor_switches(const SwitchName& s) const;

  // True if t is reachable from s over one switch-switch link.
  bool adjacent(const SwitchName& s, const SwitchName& t) const;

 private:
  std::vector<ShLink> sh_links_;
  std::vector<SsLink> ss_links_;
  std::map<SwitchName, std::map<PortId, Peer>> ports_;
  std::map<HostName, std::pair<SwitchName, PortId>> attachment_;
};

// One hop of an installed path: the rule to install at `at` for packets
// entering through `in_port`.
struct PathHop {
  SwitchName at;
  PortId in_port = 0;
};

// Shortest switch path from `from` (packet currently at this switch, entered
// through `entry_port`) to the switch where `to_host` attaches. BFS; equal
// length ties resolved toward the smallest neighbor switch name. Returns the
// hop list (first element is `from` itself); nullopt if unreachable.
std::optional<std::vector<PathHop>> shortest_path(const Topology& top,
                                                  const SwitchName& from,
                                                  PortId entry_port,
                                                  const HostName& to_host);

}  // namespace sdnmc
